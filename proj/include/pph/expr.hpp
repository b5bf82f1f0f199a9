#pragma once

// Expression IR for boolean functions over positional quantifier blocks.
//
// A Family is f: Σ^{m1} × ... × Σ^{mn} → Σ. Variables are named by
// (block, index), both 1-based, and print as `b<block>_<index>`. Within a
// block the first variable is the most significant bit, so lexicographic
// order on assignments coincides with numeric order of the packed value.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pph {

using Bits = std::vector<bool>;
/// One bit sequence per block, lengths matching the family widths.
using Assignment = std::vector<Bits>;

struct VarRef {
    int block = 1;
    int index = 1;

    friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

/// Immutable boolean expression tree. Copies share structure.
class Expr {
public:
    enum class Kind : std::uint8_t { constant, variable, negation, conjunction, disjunction };

    static Expr constant(bool value);
    static Expr variable(VarRef v);
    static Expr variable(int block, int index) { return variable(VarRef{block, index}); }

    friend Expr operator!(const Expr& e);
    friend Expr operator&(const Expr& a, const Expr& b);
    friend Expr operator|(const Expr& a, const Expr& b);

    Kind kind() const noexcept;
    bool value() const;            // constant only
    VarRef var() const;            // variable only
    const Expr& operand() const;   // negation only
    const Expr& lhs() const;       // conjunction / disjunction
    const Expr& rhs() const;

    /// Number of nodes of the expanded tree (equals the printed node count).
    std::uint64_t size() const noexcept;
    /// Largest block index referenced anywhere in the tree, 0 if none.
    int max_block() const noexcept;
    /// Largest index referenced within `block`, 0 if none.
    int max_index(int block) const;

    /// Truth table over b1_1..b1_6 (b1_1 is lane bit 5), present only when
    /// every variable in the tree lies in block 1 with index ≤ 6.
    std::optional<std::uint64_t> small_table() const noexcept;

    /// Stable identity of the shared node, for memoised traversals.
    const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Conjunction / disjunction of a list; empty lists give the neutral constant.
Expr conjoin_all(std::span<const Expr> parts);
Expr disjoin_all(std::span<const Expr> parts);

/// Replaces every variable by `replace(v)`; shared subtrees are rewritten once.
Expr rewrite_vars(const Expr& e, const std::function<Expr(VarRef)>& replace);

/// Printing with a custom variable namer; binary nodes are always parenthesised.
std::string to_string(const Expr& e, const std::function<std::string(VarRef)>& name);
std::string to_string(const Expr& e);

class Family {
public:
    /// Throws ShapeError for an empty or negative width list and WidthError
    /// when the body references a variable outside the declared blocks.
    Family(std::vector<int> widths, Expr body);

    const std::vector<int>& widths() const noexcept { return widths_; }
    const Expr& body() const noexcept { return body_; }
    int blocks() const noexcept { return static_cast<int>(widths_.size()); }
    int width(int block) const { return widths_.at(static_cast<std::size_t>(block - 1)); }
    int total_width() const noexcept;

    friend bool operator==(const Family& a, const Family& b);

private:
    std::vector<int> widths_;
    Expr body_;
};

// Grammar:
//   family := "blocks" width ("," width)* ";" expr
//   expr   := term ("|" term)*
//   term   := factor ("&" factor)*
//   factor := "!" factor | "(" expr ")" | "0" | "1" | "b" INT "_" INT
Family parse_family(std::string_view text);
std::string print_family(const Family& f);

/// Resolves an identifier token to an expression; nullopt rejects it.
using AtomResolver = std::function<std::optional<Expr>(std::string_view name, std::size_t position)>;

/// Parses `expr` starting at `pos`, advancing `pos` past it. Trailing input is
/// left for the caller. Identifiers are [A-Za-z][A-Za-z0-9_]*.
Expr parse_expression(std::string_view text, std::size_t& pos, const AtomResolver& resolve);

bool evaluate(const Family& f, const Assignment& a);

/// Fixes b1_1..b1_k to `bits` and reindexes the rest of block 1. An emptied
/// first block is dropped when other blocks exist, kept at width 0 otherwise.
Family fix_first_block_prefix(const Family& f, const Bits& bits);
/// Same substitution but always keeps the (possibly width-0) first block, so
/// the block count and quantifier alternation are unchanged.
Family fix_first_block_prefix_keep(const Family& f, const Bits& bits);

/// Substitutes a whole block by constants and removes it. Removing the only
/// block leaves a single width-0 block.
Family bind_block(const Family& f, int block, const Bits& bits);

Family negate_output(const Family& f);
Family negate_block_inputs(const Family& f, int block);
/// Grows `block` by one, shifting its variables up; the new (block, 1) is unused.
Family add_leading_variable(const Family& f, int block);

/// Canonical disjunction of minterms. `table[i]` is the value at the i-th
/// assignment in lexicographic order (first variable most significant).
Family from_truth_table(std::vector<int> widths, const Bits& table);

/// Bits of `value` as a sequence of `width` bits, most significant first.
Bits to_bits(std::uint64_t value, int width);
std::uint64_t from_bits(const Bits& bits);
std::string bits_to_string(const Bits& bits);
/// Parses a string of '0'/'1' characters.
Bits parse_bits(std::string_view text);

} // namespace pph
