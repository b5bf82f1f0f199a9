#pragma once

// Strong (instance-to-instance) reductions between the promise problems, and
// the witness constructions for the intersection results.

#include "pph/expr.hpp"
#include "pph/mutation.hpp"
#include "pph/semantics.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pph {

enum class RuleKind { equality, containment };

std::string to_string(RuleKind k);

/// A transform μ with source(f) ⊇ target(μ(f)); for `equality` the two sides
/// must coincide. A dualizing rule relates ¬source to target instead.
struct ReductionRule {
    std::string name;
    ProblemId source;
    ProblemId target;
    RuleKind kind = RuleKind::containment;
    bool dualizing = false;
    std::function<Family(const Family&)> transform;
};

/// Catalog names in a stable order. `pi1_to_uval` is listed but maps bit
/// strings, not families; see apply_pi1_to_uval.
const std::vector<std::string>& rule_names();
bool is_family_rule(std::string_view name);

/// The named rule instantiated at quantifier level `level` (the source's
/// block count). Throws UnknownRule, or ShapeError when the rule has no
/// version at that level.
ReductionRule make_rule(std::string_view name, int level, Mutation mutation = Mutation::none);

/// Applies the named rule at the level given by f's block count.
Family apply_rule(std::string_view name, const Family& f, Mutation mutation = Mutation::none);

struct RuleCheck {
    PromiseValue expected; // source value, dualized for dualizing rules
    PromiseValue actual;   // target value on the transformed instance
    bool pass = false;
};

/// Throws LevelMismatch when f does not have the source's block count.
RuleCheck check_rule(const ReductionRule& rule, const Family& f, std::uint64_t cap = kDefaultCap);
RuleCheck check_rule(std::string_view name, const Family& f, std::uint64_t cap = kDefaultCap);

/// r2 ∘ r1. Throws TypeMismatch unless r1.target == r2.source.
ReductionRule compose_rules(const ReductionRule& r1, const ReductionRule& r2);
ReductionRule identity_rule(const ProblemId& p);
/// The reverse direction of a dualizing equality rule, whose transforms are
/// all involutions. Throws TypeMismatch for other rules.
ReductionRule converse(const ReductionRule& rule);

/// Parses "r1;r2;..." into the composition; an element may be written
/// "converse(r)". Each rule is instantiated at the level where the previous
/// one ends, the first at `level`.
ReductionRule rule_chain(std::string_view text, int level, Mutation mutation = Mutation::none);

/// f_x(y) = 1 iff y = (x₁); UVAL(f_x) = {x₁}. Throws ShapeError on empty x.
Family apply_pi1_to_uval(const Bits& x);

/// The MaxVAL → UVAL_{n+1} gadget body for a first block of width m:
///   f(x) ∧ ∧_{i=1..m} (x_i ∨ ¬f(x_1..x_{i-1}, 1, y_{i,i+1..m})).
/// `instance(args, copy)` instantiates f with its first block replaced by
/// `args`; copy 0 is the main conjunct, copy i the i-th. `ys` holds the
/// m(m-1)/2 fresh variables, y_{i,l} at position Σ_{k<i}(m-k) + (l-i-1).
Expr maxval_gadget_body(int m, const std::function<Expr(const std::vector<Expr>&, int)>& instance,
                        const std::vector<Expr>& xs, const std::vector<Expr>& ys,
                        Mutation mutation = Mutation::none);

/// SAT ∝ UVAL₂ (sat_to_maxval followed by the gadget) applied to block 1 only;
/// blocks 2.. of f are carried through as free parameters. Output blocks are
/// [s (m+1), z ((m+1)m/2), f's blocks 2..]. With the parameters bound this
/// is the composite rule applied to the bound family.
Family sat_to_uval2_parametric(const Family& f);

/// f_x(i, y) = g(x, y) if i = 1, ¬h(x, y) if i = 0, as a 1-block family over
/// (i, y). g and h are 2-block families with first-block width |x|; a
/// narrower y-block is padded with unused variables.
Family build_val_intersection(const Family& g, const Family& h, const Bits& x);
Family build_uval_intersection(const Family& g, const Family& h, const Bits& x);

} // namespace pph
