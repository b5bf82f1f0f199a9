#include <doctest.h>

#include "pph/error.hpp"
#include "pph/expr.hpp"
#include "pph/random.hpp"
#include "pph/semantics.hpp"

#include <set>

using namespace pph;

namespace {

// Independent reference: recursive enumeration through the tree-walking
// evaluator, with the promise problems read straight off their definitions.
bool alternation(const Family& f, Assignment& prefix, bool exists) {
    const auto block = prefix.size();
    if (block == f.widths().size()) return evaluate(f, prefix);
    const int w = f.widths()[block];
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v) {
        prefix.push_back(to_bits(v, w));
        const bool inner = alternation(f, prefix, !exists);
        prefix.pop_back();
        if (exists && inner) return true;
        if (!exists && !inner) return false;
    }
    return !exists;
}

std::vector<Bits> oracle_set(const Family& f, bool inner_exists) {
    std::vector<Bits> out;
    const int w = f.widths()[0];
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v) {
        Assignment a{to_bits(v, w)};
        if (alternation(f, a, inner_exists)) out.push_back(a[0]);
    }
    return out;
}

PromiseValue from_set(const std::set<bool>& s) {
    if (s.size() == 2 || s.empty()) return PromiseValue::both;
    return singleton(*s.begin());
}

PromiseValue oracle_solve(ProblemKind k, const Family& f) {
    const int m1 = f.widths()[0];
    const std::uint64_t n = std::uint64_t{1} << m1;
    const auto solutions = oracle_set(f, /*inner_exists=*/false);   // SAT̄_{n-1}(f_x) = 1
    const auto co_holds = oracle_set(f, /*inner_exists=*/true);     // SAT_{n-1}(f_x) = 1
    const bool sat = !solutions.empty();
    const bool cosat = co_holds.size() == n;
    switch (k) {
    case ProblemKind::sat: return singleton(sat);
    case ProblemKind::cosat: return singleton(cosat);
    case ProblemKind::usat: return solutions.size() <= 1 ? singleton(sat) : PromiseValue::both;
    case ProblemKind::cousat: return n - co_holds.size() <= 1 ? singleton(cosat) : PromiseValue::both;
    case ProblemKind::maxval:
        if (!sat || m1 == 0) return PromiseValue::both;
        return singleton(solutions.back()[0]);
    case ProblemKind::minval:
        if (!sat || m1 == 0) return PromiseValue::both;
        return singleton(solutions.front()[0]);
    case ProblemKind::val: {
        if (!sat || m1 == 0) return PromiseValue::both;
        std::set<bool> firsts;
        for (const auto& x : solutions) firsts.insert(x[0]);
        return from_set(firsts);
    }
    case ProblemKind::uval:
        if (solutions.size() != 1 || m1 == 0) return PromiseValue::both;
        return singleton(solutions.front()[0]);
    }
    return PromiseValue::both;
}

constexpr ProblemKind kAllKinds[] = {ProblemKind::sat,  ProblemKind::cosat, ProblemKind::maxval, ProblemKind::minval,
                                     ProblemKind::val,  ProblemKind::usat,  ProblemKind::cousat, ProblemKind::uval};

Family table_family(std::vector<int> widths, std::uint64_t code) {
    int total = 0;
    for (int w : widths) total += w;
    const std::size_t n = std::size_t{1} << total;
    Bits table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (code >> (n - 1 - i)) & 1u;
    return from_truth_table(std::move(widths), table);
}

} // namespace

TEST_CASE("qbf_value examples") {
    CHECK_FALSE(qbf_value(parse_family("blocks 1; b1_1 & !b1_1"), Quantifier::exists));
    CHECK(qbf_value(parse_family("blocks 1,1; b1_1 | b2_1"), Quantifier::exists));
    CHECK_FALSE(qbf_value(parse_family("blocks 1,1; b1_1 & b2_1"), Quantifier::exists));
    CHECK_FALSE(qbf_value(parse_family("blocks 1,1; b1_1 & b2_1"), Quantifier::forall));
    CHECK(qbf_value(parse_family("blocks 1,1; !b1_1 | b2_1"), Quantifier::forall));
}

TEST_CASE("solve examples") {
    CHECK(solve(ProblemKind::usat, parse_family("blocks 2; b1_1 | b1_2")) == PromiseValue::both);
    CHECK(solve(ProblemKind::uval, parse_family("blocks 2; b1_1 & !b1_2")) == PromiseValue::one);
    const Family xor2 = parse_family("blocks 2; (!b1_1 & b1_2) | (b1_1 & !b1_2)");
    CHECK(solve(ProblemKind::maxval, xor2) == PromiseValue::one);
    CHECK(solve(ProblemKind::minval, xor2) == PromiseValue::zero);
    CHECK(solve(ProblemKind::val, parse_family("blocks 2; b1_1 | b1_2")) == PromiseValue::both);
    CHECK(solve(ProblemKind::sat, parse_family("blocks 2; b1_1 | b1_2")) == PromiseValue::one);
    CHECK(solve(ProblemKind::cosat, parse_family("blocks 2; b1_1 | b1_2")) == PromiseValue::zero);
    // exactly one falsifying assignment satisfies the co-promise
    CHECK(solve(ProblemKind::cousat, parse_family("blocks 2; b1_1 | b1_2")) == PromiseValue::zero);
    CHECK(solve(ProblemKind::cousat, parse_family("blocks 2; b1_1")) == PromiseValue::both);
    CHECK(solve(ProblemKind::cousat, parse_family("blocks 2; 1")) == PromiseValue::one);
}

TEST_CASE("first_block_solution_set examples") {
    CHECK(first_block_solution_set(parse_family("blocks 2; b1_1 & b1_2")) == std::vector<Bits>{{true, true}});
    CHECK(first_block_solution_set(parse_family("blocks 1; 0")).empty());
    CHECK(first_block_solution_set(parse_family("blocks 1,1; b1_1 | b2_1")) == std::vector<Bits>{{true}});
    const auto all = first_block_solution_set(parse_family("blocks 2; 1"));
    REQUIRE(all.size() == 4);
    CHECK(all.front() == Bits{false, false});
    CHECK(all.back() == Bits{true, true});
}

TEST_CASE("dual_value") {
    CHECK(dual_value(PromiseValue::zero) == PromiseValue::one);
    CHECK(dual_value(PromiseValue::one) == PromiseValue::zero);
    CHECK(dual_value(PromiseValue::both) == PromiseValue::both);
    for (auto v : {PromiseValue::zero, PromiseValue::one, PromiseValue::both}) CHECK(dual_value(dual_value(v)) == v);
}

TEST_CASE("promise value set algebra") {
    CHECK(is_subset(PromiseValue::zero, PromiseValue::both));
    CHECK_FALSE(is_subset(PromiseValue::both, PromiseValue::one));
    CHECK_FALSE(is_subset(PromiseValue::zero, PromiseValue::one));
    CHECK(set_union(PromiseValue::zero, PromiseValue::one) == PromiseValue::both);
    CHECK(contains(PromiseValue::both, false));
    CHECK_FALSE(contains(PromiseValue::one, false));
}

TEST_CASE("level-1 solve agrees with the enumeration oracle on every table, m <= 3") {
    for (int m = 0; m <= 3; ++m) {
        const std::uint64_t tables = std::uint64_t{1} << (1u << m);
        for (std::uint64_t code = 0; code < tables; ++code) {
            const Family f = table_family({m}, code);
            for (ProblemKind k : kAllKinds) REQUIRE(solve(k, f) == oracle_solve(k, f));
        }
    }
}

TEST_CASE("multi-block solve agrees with the enumeration oracle") {
    // every 2-block function with total width <= 4, plus random 3-block tables
    for (auto widths : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {3, 1}, {0, 2}, {2, 0}}) {
        const int total = widths[0] + widths[1];
        const std::uint64_t tables = std::uint64_t{1} << (1u << total);
        const std::uint64_t step = total == 4 ? 97 : 1;
        for (std::uint64_t code = 0; code < tables; code += step) {
            const Family f = table_family(widths, code);
            for (ProblemKind k : kAllKinds) REQUIRE(solve(k, f) == oracle_solve(k, f));
            REQUIRE(qbf_value(f, Quantifier::exists) == (solve(ProblemKind::sat, f) == PromiseValue::one));
        }
    }
    RandomSource rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<int> widths = {1 + static_cast<int>(rng.below(2)), 1 + static_cast<int>(rng.below(2)),
                                         1 + static_cast<int>(rng.below(2))};
        const Family f = table_family(widths, rng.next());
        for (ProblemKind k : kAllKinds) REQUIRE(solve(k, f) == oracle_solve(k, f));
    }
}

TEST_CASE("wide families use the word-parallel path correctly") {
    // 8 variables: forces the multi-word evaluator
    const Family f = parse_family("blocks 4,4; (b1_1 & !b1_4) | (b2_2 & b2_3 & !b1_2)");
    for (ProblemKind k : kAllKinds) CHECK(solve(k, f) == oracle_solve(k, f));
    const Family g = parse_family("blocks 7; b1_1 & b1_7");
    CHECK(truth_table(g).count() == 32);
    CHECK(solve(ProblemKind::uval, parse_family("blocks 7; b1_1 & b1_2 & b1_3 & b1_4 & b1_5 & b1_6 & !b1_7")) ==
          PromiseValue::one);
}

TEST_CASE("containment identities hold exhaustively at m = 3") {
    for (std::uint64_t code = 0; code < 256; ++code) {
        const Family f = table_family({3}, code);
        const auto uval = solve(ProblemKind::uval, f);
        const auto val = solve(ProblemKind::val, f);
        const auto maxval = solve(ProblemKind::maxval, f);
        REQUIRE(is_subset(val, uval));
        REQUIRE(is_subset(maxval, val));
        REQUIRE(is_subset(solve(ProblemKind::sat, f), solve(ProblemKind::usat, f)));
        REQUIRE(solve(ProblemKind::sat, f) != PromiseValue::both);
        REQUIRE(solve(ProblemKind::cosat, f) != PromiseValue::both);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(solve(ProblemId{ProblemKind::uval, 2}, parse_family("blocks 2; b1_1")), LevelMismatch);
    CHECK_THROWS_AS(solve(ProblemKind::sat, parse_family("blocks 12; b1_1"), 1024), CapExceeded);
    CHECK_NOTHROW(solve(ProblemKind::sat, parse_family("blocks 10; b1_1"), 1024));
    CHECK_THROWS_AS(qbf_value(parse_family("blocks 30; b1_1"), Quantifier::exists), CapExceeded);
}

TEST_CASE("width-0 first block") {
    const Family f = parse_family("blocks 0; 1");
    CHECK(solve(ProblemKind::sat, f) == PromiseValue::one);
    CHECK(solve(ProblemKind::usat, f) == PromiseValue::one);
    CHECK(solve(ProblemKind::uval, f) == PromiseValue::both);
    const Family g = parse_family("blocks 0,1; b2_1");
    CHECK(solve(ProblemKind::sat, g) == PromiseValue::zero);
    CHECK(solve(ProblemKind::cosat, g) == PromiseValue::one);
}

TEST_CASE("problem names") {
    CHECK(to_string(ProblemId{ProblemKind::uval, 2}) == "UVAL2");
    CHECK(to_string(ProblemId{ProblemKind::sat, 1}) == "SAT");
    CHECK(parse_problem_kind("cousat") == ProblemKind::cousat);
    CHECK_FALSE(parse_problem_kind("XSAT").has_value());
}
