#pragma once

// Exact brute-force semantics for the promise problems at every level.

#include "pph/expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pph {

/// Nonempty subset of {0,1}; the encoding is the member bitmask (bit b set
/// iff b is a member), so inclusion is a mask test.
enum class PromiseValue : std::uint8_t { zero = 1, one = 2, both = 3 };

PromiseValue dual_value(PromiseValue v) noexcept;
PromiseValue singleton(bool bit) noexcept;
bool contains(PromiseValue v, bool bit) noexcept;
/// `inner ⊆ outer`.
bool is_subset(PromiseValue inner, PromiseValue outer) noexcept;
PromiseValue set_union(PromiseValue a, PromiseValue b) noexcept;
std::string to_string(PromiseValue v);

enum class ProblemKind : std::uint8_t { sat, cosat, maxval, minval, val, usat, cousat, uval };

struct ProblemId {
    ProblemKind kind = ProblemKind::sat;
    int level = 1;

    friend bool operator==(const ProblemId&, const ProblemId&) = default;
};

/// "SAT", "UVAL2", ... (level suffix only above 1).
std::string to_string(ProblemKind k);
std::string to_string(const ProblemId& p);
std::optional<ProblemKind> parse_problem_kind(std::string_view name);

enum class Quantifier : std::uint8_t { exists, forall };

inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 22;

/// Full truth table of a family, entries in lexicographic order of the
/// concatenated assignment (block 1 most significant).
class TruthTable {
public:
    TruthTable(int width, std::vector<std::uint64_t> words) : width_(width), words_(std::move(words)) {}

    int width() const noexcept { return width_; }
    std::uint64_t entries() const noexcept { return std::uint64_t{1} << width_; }
    bool at(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    std::uint64_t count() const noexcept;

private:
    int width_;
    std::vector<std::uint64_t> words_;
};

/// Throws CapExceeded when 2^(total width) exceeds `cap`.
TruthTable truth_table(const Family& f, std::uint64_t cap = kDefaultCap);

/// Alternating quantifier evaluation: `start` on block 1, alternating after.
bool qbf_value(const Family& f, Quantifier start, std::uint64_t cap = kDefaultCap);

/// {x | the inner alternation (∀ on block 2, ∃ on block 3, ...) of f_x holds},
/// in lexicographic order.
std::vector<Bits> first_block_solution_set(const Family& f, std::uint64_t cap = kDefaultCap);

/// Throws LevelMismatch when p.level differs from f's block count.
PromiseValue solve(const ProblemId& p, const Family& f, std::uint64_t cap = kDefaultCap);

/// Convenience: level taken from the family.
PromiseValue solve(ProblemKind k, const Family& f, std::uint64_t cap = kDefaultCap);

} // namespace pph
