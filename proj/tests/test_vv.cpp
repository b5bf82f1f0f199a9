#include <doctest.h>

#include "pph/error.hpp"
#include "pph/vv.hpp"

using namespace pph;

namespace {

Family table_family(int m, std::uint64_t code) {
    const std::size_t n = std::size_t{1} << m;
    Bits table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (code >> (n - 1 - i)) & 1u;
    return from_truth_table({m}, table);
}

// entry j (the assignment with packed value j) at bit j
std::uint64_t packed(const Family& f) {
    std::uint64_t t = 0;
    const int m = f.width(1);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << m); ++j) {
        if (evaluate(f, {to_bits(j, m)})) t |= std::uint64_t{1} << j;
    }
    return t;
}

} // namespace

TEST_CASE("sample_hash bounds and determinism") {
    RandomSource a(7), b(7);
    const HashConstraint ha = sample_hash(2, 1, a), hb = sample_hash(2, 1, b);
    CHECK(ha.rows == hb.rows);
    CHECK(ha.offsets == hb.offsets);
    CHECK(ha.rows.size() == 1);
    CHECK(ha.rows[0].size() == 2);
    RandomSource r(1);
    CHECK_NOTHROW(sample_hash(3, 4, r));
    CHECK_THROWS_AS(sample_hash(3, 0, r), ShapeError);
    CHECK_THROWS_AS(sample_hash(3, 5, r), ShapeError);
}

TEST_CASE("sample_hash bits are balanced") {
    RandomSource r(11);
    constexpr int kSamples = 10000;
    int counts[3] = {0, 0, 0};
    for (int s = 0; s < kSamples; ++s) {
        const HashConstraint h = sample_hash(2, 1, r);
        counts[0] += h.rows[0][0];
        counts[1] += h.rows[0][1];
        counts[2] += h.offsets[0];
    }
    for (int c : counts) CHECK(std::abs(c / double(kSamples) - 0.5) <= 0.02);
}

TEST_CASE("conjoin_hash examples") {
    const Family f = parse_family("blocks 2; b1_1 | b1_2");
    const Family even = conjoin_hash(f, HashConstraint{2, {{true, true}}, {false}});
    CHECK(first_block_solution_set(even) == std::vector<Bits>{{true, true}});
    const Family never = conjoin_hash(f, HashConstraint{2, {{false, false}}, {true}});
    CHECK(first_block_solution_set(never).empty());
    const Family same = conjoin_hash(f, HashConstraint{2, {{false, false}}, {false}});
    CHECK(first_block_solution_set(same) == first_block_solution_set(f));
    CHECK_THROWS_AS(conjoin_hash(f, HashConstraint{3, {{true, true, true}}, {false}}), ShapeError);
}

TEST_CASE("conjoin_hash keeps exactly the solutions inside the subspace") {
    RandomSource r(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 1 + static_cast<int>(r.below(4));
        const Family f = table_family(m, r.next());
        const int k = 1 + static_cast<int>(r.below(static_cast<std::uint64_t>(m + 1)));
        const HashConstraint h = sample_hash(m, k, r);
        const Family q = conjoin_hash(f, h);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
            const Bits x = to_bits(v, m);
            REQUIRE(evaluate(q, {x}) == (evaluate(f, {x}) && satisfies(h, x)));
        }
        // each row costs O(m) connectives
        CHECK(q.body().size() <= f.body().size() + static_cast<std::uint64_t>(k) * (8 * m + 4));
    }
}

TEST_CASE("vv_decide examples") {
    const Family unsat = parse_family("blocks 3; b1_1 & !b1_1");
    const Family unique = parse_family("blocks 3; b1_1 & !b1_2 & b1_3");
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CHECK_FALSE(vv_decide(unsat, seed));
        hits += vv_decide(unique, seed);
    }
    CHECK(hits >= 134); // 2/3 of 200
}

TEST_CASE("vv is one-sided and its fast path matches, every table m <= 3") {
    for (int m = 1; m <= 3; ++m) {
        const std::uint64_t tables = std::uint64_t{1} << (1u << m);
        for (std::uint64_t code = 0; code < tables; ++code) {
            const Family f = table_family(m, code);
            const bool sat = solve(ProblemKind::sat, f) == PromiseValue::one;
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                const bool out = vv_decide(f, seed);
                if (out) REQUIRE(sat);
                REQUIRE(vv_decide_table(packed(f), m, seed).output == out);
            }
        }
    }
}

TEST_CASE("every adversarial resolution is sound, m = 2") {
    for (std::uint64_t code = 0; code < 16; ++code) {
        const Family f = table_family(2, code);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const MachineSpec vv = vv_machine(seed);
            const AdversaryTree tree = run_adversarial(vv, f);
            REQUIRE(leaves_correct(vv, f, tree));
        }
    }
}

TEST_CASE("identical seeds give identical transcripts") {
    const Family f = parse_family("blocks 3; b1_1 | b1_3");
    PromiseOracle o1(ProblemKind::usat), o2(ProblemKind::usat);
    CHECK(format_vv_run(vv_run(f, 42, {}, o1)) == format_vv_run(vv_run(f, 42, {}, o2)));
    VvOptions fixed;
    fixed.k_min = fixed.k_max = 2;
    fixed.trials = 5;
    PromiseOracle o3(ProblemKind::usat);
    for (const auto& t : vv_run(f, 1, fixed, o3).trials) CHECK(t.hash.rows.size() == 2);
    VvOptions bad;
    bad.k_min = 5;
    CHECK_THROWS_AS(vv_decide(f, 1, bad), ShapeError);
}
