#pragma once

// Deliberate single-site defects, used to confirm the verification campaigns
// actually notice broken constructions.

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace pph {

enum class Mutation {
    none,
    gadget_drop_negation,      // conjunct i reads (x_i ∨ f(...)) instead of (x_i ∨ ¬f(...))
    gadget_fix_zero,           // conjunct i pins x_i to 0 instead of 1
    gadget_drop_last_conjunct, // the y-free final conjunct is left out
    sat_to_maxval_polarity,    // f(x₂..) ∨ x₁ instead of f(x₂..) ∨ ¬x₁
    machine_skip_final_eval,   // the bit-fixing machine accepts its candidate unchecked
};

std::span<const Mutation> all_mutations();
std::string to_string(Mutation m);
std::optional<Mutation> parse_mutation(std::string_view name);

} // namespace pph
