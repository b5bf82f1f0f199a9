#include <doctest.h>

#include "pph/error.hpp"
#include "pph/random.hpp"
#include "pph/reductions.hpp"

using namespace pph;

namespace {

Family table_family(std::vector<int> widths, std::uint64_t code) {
    int total = 0;
    for (int w : widths) total += w;
    const std::size_t n = std::size_t{1} << total;
    Bits table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (code >> (n - 1 - i)) & 1u;
    return from_truth_table(std::move(widths), table);
}

bool same_function(const Family& a, const Family& b) {
    if (a.widths() != b.widths()) return false;
    const TruthTable ta = truth_table(a), tb = truth_table(b);
    for (std::uint64_t i = 0; i < ta.entries(); ++i) {
        if (ta.at(i) != tb.at(i)) return false;
    }
    return true;
}

const std::vector<std::string> kFamilyRules = {"dual_sat",     "dual_maxval",  "dual_val",      "dual_usat",
                                               "dual_uval",    "sat_to_maxval", "maxval_to_sat", "uval_to_val",
                                               "val_to_maxval", "uval_to_usat", "usat_to_sat",   "maxval_to_uvaln1"};

} // namespace

TEST_CASE("catalog shape") {
    CHECK(rule_names().size() == 14);
    for (const auto& name : rule_names()) {
        if (name == "pi1_to_uval") {
            CHECK_FALSE(is_family_rule(name));
            CHECK_THROWS_AS(make_rule(name, 1), ShapeError);
            continue;
        }
        const int level = name == "dual_uvaln" ? 2 : 1;
        const ReductionRule r = make_rule(name, level);
        CHECK(r.source.level == level);
    }
    CHECK_THROWS_AS(make_rule("no_such_rule", 1), UnknownRule);
    CHECK_THROWS_AS(make_rule("dual_uvaln", 1), ShapeError);
    CHECK(make_rule("maxval_to_uvaln1", 2).target == ProblemId{ProblemKind::uval, 3});
    CHECK_THROWS_AS(make_rule("dual_sat", 2).transform(parse_family("blocks 1; b1_1")), LevelMismatch);
}

TEST_CASE("dual_sat is output negation") {
    for (std::uint64_t code = 0; code < 16; ++code) {
        const Family f = table_family({2}, code);
        CHECK(apply_rule("dual_sat", f) == negate_output(f));
    }
}

TEST_CASE("sat_to_maxval example") {
    const Family out = apply_rule("sat_to_maxval", parse_family("blocks 1; b1_1 & !b1_1"));
    CHECK(same_function(out, parse_family("blocks 2; (b1_2 & !b1_2) | !b1_1")));
    CHECK(solve(ProblemKind::maxval, out) == PromiseValue::zero);
}

TEST_CASE("gadget example and variable count") {
    const Family g = apply_rule("maxval_to_uvaln1", parse_family("blocks 2; b1_1 | b1_2"));
    CHECK(g.widths() == std::vector<int>{2, 1});
    CHECK(first_block_solution_set(g) == std::vector<Bits>{{true, true}});
    CHECK(solve(ProblemId{ProblemKind::uval, 2}, g) == PromiseValue::one);
    for (int m = 1; m <= 5; ++m) {
        const Family f = Family({m}, Expr::variable(1, m));
        const Family out = apply_rule("maxval_to_uvaln1", f);
        CHECK(out.total_width() == m + m * (m - 1) / 2);
        CHECK(out.body().size() <= (m + 1) * f.body().size() + 4 * m);
    }
}

TEST_CASE("gadget follows the displayed conjuncts literally at m = 3") {
    // Independent construction by hand: y_{1,2}=b2_1, y_{1,3}=b2_2, y_{2,3}=b2_3.
    const Family f = parse_family("blocks 3; (b1_1 & !b1_2) | b1_3");
    auto F = [](Expr a, Expr b, Expr c) { return (a & !b) | c; };
    auto x = [](int i) { return Expr::variable(1, i); };
    auto y = [](int i) { return Expr::variable(2, i); };
    const Expr one = Expr::constant(true);
    const Expr expected = F(x(1), x(2), x(3)) & (x(1) | !F(one, y(1), y(2))) & (x(2) | !F(x(1), one, y(3))) &
                          (x(3) | !F(x(1), x(2), one));
    CHECK(apply_rule("maxval_to_uvaln1", f) == Family({3, 3}, expected));
}

TEST_CASE("spec check examples") {
    CHECK(check_rule("dual_uval", parse_family("blocks 2; b1_1 & !b1_2")).pass);
    const RuleCheck c = check_rule("usat_to_sat", parse_family("blocks 2; b1_1 | b1_2"));
    CHECK(c.pass);
    CHECK(c.expected == PromiseValue::both);
    CHECK(c.actual == PromiseValue::one);
    CHECK(apply_rule("uval_to_usat", parse_family("blocks 2; b1_1 & !b1_2")) ==
          fix_first_block_prefix_keep(parse_family("blocks 2; b1_1 & !b1_2"), Bits{true}));
}

TEST_CASE("every rule passes on all 256 tables at m = 3") {
    for (const auto& name : kFamilyRules) {
        const ReductionRule r = make_rule(name, 1);
        int failures = 0;
        for (std::uint64_t code = 0; code < 256; ++code) {
            if (!check_rule(r, table_family({3}, code)).pass) ++failures;
        }
        CHECK_MESSAGE(failures == 0, name);
    }
}

TEST_CASE("every rule passes on 2-block shapes with widths summing to at most 4") {
    const std::vector<std::vector<int>> shapes = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {3, 1}};
    std::vector<std::string> names = kFamilyRules;
    names.push_back("dual_uvaln");
    for (const auto& name : names) {
        const ReductionRule r = make_rule(name, 2);
        int failures = 0;
        for (const auto& widths : shapes) {
            const int total = widths[0] + widths[1];
            const std::uint64_t tables = std::uint64_t{1} << (1u << total);
            // total width 4 is sampled here; the default campaign covers it exhaustively
            const std::uint64_t step = total == 4 ? 61 : 1;
            for (std::uint64_t code = 0; code < tables; code += step) {
                if (!check_rule(r, table_family(widths, code)).pass) ++failures;
            }
        }
        CHECK_MESSAGE(failures == 0, name);
    }
}

TEST_CASE("level-3 lifts on random families") {
    RandomSource rng(2024);
    std::vector<std::string> names = kFamilyRules;
    names.push_back("dual_uvaln");
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<int> widths = {1 + static_cast<int>(rng.below(2)), 1, 1};
        const Family f = table_family(widths, rng.next());
        for (const auto& name : names) REQUIRE_MESSAGE(check_rule(name, f).pass, name << " on " << print_family(f));
    }
}

TEST_CASE("equality rules really are equalities") {
    // The equality rules must give identical values, never a strict subset.
    for (const auto& name : kFamilyRules) {
        const ReductionRule r = make_rule(name, 1);
        if (r.kind != RuleKind::equality) continue;
        for (std::uint64_t code = 0; code < 256; ++code) {
            const RuleCheck c = check_rule(r, table_family({3}, code));
            REQUIRE(c.actual == c.expected);
        }
    }
}

TEST_CASE("gadget satisfies the UVAL2 promise on satisfiable inputs") {
    for (int m = 1; m <= 3; ++m) {
        const std::uint64_t tables = std::uint64_t{1} << (1u << m);
        for (std::uint64_t code = 1; code < tables; ++code) {
            const Family f = table_family({m}, code);
            const Family g = apply_rule("maxval_to_uvaln1", f);
            CHECK(g.width(2) == m * (m - 1) / 2);
            REQUIRE(first_block_solution_set(g).size() == 1);
            REQUIRE(solve(ProblemId{ProblemKind::uval, 2}, g) == solve(ProblemKind::maxval, f));
        }
    }
}

TEST_CASE("composition") {
    const ReductionRule uv = compose_rules(make_rule("uval_to_val", 1), make_rule("val_to_maxval", 1));
    CHECK(uv.source == ProblemId{ProblemKind::uval, 1});
    CHECK(uv.target == ProblemId{ProblemKind::maxval, 1});
    CHECK(uv.kind == RuleKind::containment);
    const ReductionRule s2 = compose_rules(make_rule("sat_to_maxval", 1), make_rule("maxval_to_uvaln1", 1));
    CHECK(s2.target == ProblemId{ProblemKind::uval, 2});
    const ReductionRule dd = compose_rules(make_rule("dual_sat", 1), converse(make_rule("dual_sat", 1)));
    CHECK_FALSE(dd.dualizing);
    CHECK(dd.kind == RuleKind::equality);
    for (std::uint64_t code = 0; code < 256; ++code) {
        const Family f = table_family({3}, code);
        CHECK(check_rule(uv, f).pass);
        CHECK(check_rule(s2, f).pass);
        CHECK(check_rule(dd, f).pass);
        // the composite always lands inside the UVAL2 promise
        CHECK(first_block_solution_set(s2.transform(f)).size() == 1);
        const ReductionRule with_id = compose_rules(identity_rule(ProblemId{ProblemKind::uval, 1}), uv);
        CHECK(check_rule(with_id, f).pass == check_rule(uv, f).pass);
    }
    CHECK_THROWS_AS(compose_rules(make_rule("dual_sat", 1), make_rule("sat_to_maxval", 1)), TypeMismatch);
    CHECK_THROWS_AS(converse(make_rule("usat_to_sat", 1)), TypeMismatch);
}

TEST_CASE("parametric SAT to UVAL2 agrees with the composite on bound parameters") {
    const ReductionRule s2 = compose_rules(make_rule("sat_to_maxval", 1), make_rule("maxval_to_uvaln1", 1));
    RandomSource rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const Family f = table_family({2, 2}, rng.next());
        const Family p = sat_to_uval2_parametric(f);
        CHECK(p.widths() == std::vector<int>{3, 3, 2});
        for (std::uint64_t v = 0; v < 4; ++v) {
            const Bits params = to_bits(v, 2);
            const Family direct = s2.transform(bind_block(f, 2, params));
            CHECK(bind_block(p, 3, params) == direct);
        }
    }
}

TEST_CASE("pi1_to_uval") {
    for (const char* x : {"0", "1", "01", "10", "111", "0001"}) {
        const Bits bits = parse_bits(x);
        CHECK(solve(ProblemKind::uval, apply_pi1_to_uval(bits)) == singleton(bits[0]));
    }
    CHECK_THROWS_AS(apply_pi1_to_uval(Bits{}), ShapeError);
}

TEST_CASE("intersection examples") {
    const Family y = parse_family("blocks 1,1; b2_1");
    const Family f = build_val_intersection(y, y, Bits{true});
    CHECK(solve(ProblemKind::val, f) == PromiseValue::both);

    const Family zero = parse_family("blocks 1,1; 0");
    const Family one = parse_family("blocks 1,1; 1");
    const Family empty = build_val_intersection(zero, one, Bits{false});
    CHECK(first_block_solution_set(empty).empty());
    CHECK(solve(ProblemKind::val, empty) == PromiseValue::both);

    const Family unique = parse_family("blocks 1,2; b2_1 & !b2_2");
    const Family u = build_uval_intersection(unique, parse_family("blocks 1,2; 1"), Bits{true});
    CHECK(solve(ProblemKind::uval, u) == PromiseValue::one);
    CHECK(solve(ProblemKind::uval, build_uval_intersection(zero, one, Bits{true})) == PromiseValue::both);
    CHECK_THROWS_AS(build_val_intersection(y, y, Bits{true, false}), ShapeError);
}

TEST_CASE("intersection containments, exhaustive at widths (1,1)") {
    for (std::uint64_t cg = 0; cg < 16; ++cg) {
        for (std::uint64_t ch = 0; ch < 16; ++ch) {
            const Family g = table_family({1, 1}, cg), h = table_family({1, 1}, ch);
            for (bool xb : {false, true}) {
                const Bits x{xb};
                const Family gx = bind_block(g, 1, x), hx = bind_block(h, 1, x);
                const PromiseValue forced_val =
                    set_union(solve(ProblemKind::sat, gx), solve(ProblemKind::cosat, hx));
                REQUIRE(is_subset(solve(ProblemKind::val, build_val_intersection(g, h, x)), forced_val));
                const PromiseValue forced_uval =
                    set_union(solve(ProblemKind::usat, gx), solve(ProblemKind::cousat, hx));
                REQUIRE(is_subset(solve(ProblemKind::uval, build_uval_intersection(g, h, x)), forced_uval));
            }
        }
    }
}

TEST_CASE("output size stays quadratic") {
    RandomSource rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const Family f = table_family({3}, rng.next() & 0xff);
        const auto n = f.body().size() + static_cast<std::uint64_t>(f.total_width());
        for (const auto& name : kFamilyRules) CHECK(apply_rule(name, f).body().size() <= 4 * n * n);
    }
}

TEST_CASE("each gadget and reduction mutation is caught exhaustively") {
    for (Mutation m : {Mutation::gadget_drop_negation, Mutation::gadget_fix_zero, Mutation::gadget_drop_last_conjunct}) {
        const ReductionRule r = make_rule("maxval_to_uvaln1", 1, m);
        int failures = 0;
        for (std::uint64_t code = 0; code < 256; ++code) failures += !check_rule(r, table_family({3}, code)).pass;
        CHECK_MESSAGE(failures > 0, to_string(m));
    }
    const ReductionRule r = make_rule("sat_to_maxval", 1, Mutation::sat_to_maxval_polarity);
    int failures = 0;
    for (std::uint64_t code = 0; code < 256; ++code) failures += !check_rule(r, table_family({3}, code)).pass;
    CHECK(failures > 0);
}
