#include <doctest.h>

#include "pph/error.hpp"
#include "pph/oracle_sim.hpp"

using namespace pph;

namespace {

Family table_family(int m, std::uint64_t code) {
    const std::size_t n = std::size_t{1} << m;
    Bits table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (code >> (n - 1 - i)) & 1u;
    return from_truth_table({m}, table);
}

bool all_outputs(const AdversaryTree& t, bool bit) {
    for (const auto& leaf : t.leaves) {
        if (leaf.output != bit) return false;
    }
    return true;
}

} // namespace

TEST_CASE("sat_via_val examples") {
    const MachineSpec sat = make_machine("sat-via-val");

    const AdversaryTree both_true = run_adversarial(sat, parse_family("blocks 2; b1_1 & b1_2"));
    CHECK(both_true.leaves.size() == 1);
    CHECK(both_true.max_calls == 2);
    CHECK(all_outputs(both_true, true));

    const AdversaryTree either = run_adversarial(sat, parse_family("blocks 2; b1_1 | b1_2"));
    CHECK(either.leaves.size() > 1);
    CHECK_FALSE(either.leaves[0].calls[0].answer.forced);
    CHECK(all_outputs(either, true));

    const AdversaryTree none = run_adversarial(sat, parse_family("blocks 1; b1_1 & !b1_1"));
    CHECK(all_outputs(none, false));

    const AdversaryTree forced = run_adversarial(sat, parse_family("blocks 2; !b1_1 & b1_2"));
    REQUIRE(forced.leaves.size() == 1);
    const Transcript& t = forced.leaves[0];
    REQUIRE(t.calls.size() == 2);
    CHECK(t.calls[0].answer.bit == false);
    CHECK(t.calls[0].answer.forced);
    CHECK(t.calls[1].answer.bit == true);
    CHECK(t.output);

    const AdversaryTree zero = run_adversarial(sat, parse_family("blocks 2; 0"));
    CHECK(zero.leaves.size() == 4);
    CHECK(all_outputs(zero, false));
}

TEST_CASE("usat_via_uval examples") {
    const MachineSpec usat = make_machine("usat_via_uval");
    const Family unique = parse_family("blocks 2; !b1_1 & b1_2");
    const AdversaryTree u = run_adversarial(usat, unique);
    CHECK(u.leaves.size() == 1);
    CHECK(all_outputs(u, true));

    const AdversaryTree none = run_adversarial(usat, parse_family("blocks 2; 0"));
    CHECK(all_outputs(none, false));

    const Family three = parse_family("blocks 2; b1_1 | b1_2");
    CHECK(solve(ProblemKind::usat, three) == PromiseValue::both);
    CHECK(leaves_correct(usat, three, run_adversarial(usat, three)));
}

TEST_CASE("transcript format") {
    const Transcript t = run_single_path(make_machine("sat-via-val"), parse_family("blocks 2; !b1_1 & b1_2"));
    CHECK(format_transcript(t) ==
          "Q blocks 2; (!b1_1 & b1_2) -> 0 forced\n"
          "Q blocks 1; (!0 & b1_1) -> 1 forced\n"
          "OUT 1\n");
    const Transcript free = run_single_path(make_machine("sat-via-val"), parse_family("blocks 1; 0"), true);
    CHECK(format_transcript(free) == "Q blocks 1; 0 -> 1 free\nOUT 0\n");
}

TEST_CASE("bit-fixing machines are correct on every table, m <= 3") {
    const MachineSpec sat = make_machine("sat-via-val");
    const MachineSpec usat = make_machine("usat-via-uval");
    for (int m = 1; m <= 3; ++m) {
        const std::uint64_t tables = std::uint64_t{1} << (1u << m);
        for (std::uint64_t code = 0; code < tables; ++code) {
            const Family f = table_family(m, code);
            const AdversaryTree ts = run_adversarial(sat, f);
            REQUIRE(leaves_correct(sat, f, ts));
            REQUIRE(ts.max_calls == static_cast<std::size_t>(m));
            REQUIRE(ts.min_calls == static_cast<std::size_t>(m));
            REQUIRE(ts.leaves.size() <= (std::size_t{1} << m));
            REQUIRE(all_outputs(ts, solve(ProblemKind::sat, f) == PromiseValue::one));

            const AdversaryTree tu = run_adversarial(usat, f);
            REQUIRE(leaves_correct(usat, f, tu));
            REQUIRE(tu.max_calls == static_cast<std::size_t>(m));
            if (first_block_solution_set(f).size() <= 1) {
                REQUIRE(all_outputs(tu, solve(ProblemKind::usat, f) == PromiseValue::one));
            }
        }
    }
}

TEST_CASE("identity machines") {
    const Family f = parse_family("blocks 2; b1_1 | b1_2");
    const AdversaryTree s = run_adversarial(make_machine("sat-identity"), f);
    CHECK(s.leaves.size() == 1);
    CHECK(all_outputs(s, true));
    const AdversaryTree u = run_adversarial(make_machine("usat-identity"), f);
    CHECK(u.leaves.size() == 2);
    CHECK(leaves_correct(make_machine("usat-identity"), f, u));
    CHECK_THROWS_AS(make_machine("nope"), UnknownRule);
}

TEST_CASE("skipping the final evaluation is caught") {
    const MachineSpec broken = make_machine("sat-via-val", Mutation::machine_skip_final_eval);
    const Family f = parse_family("blocks 2; 0");
    CHECK_FALSE(leaves_correct(broken, f, run_adversarial(broken, f)));
}

TEST_CASE("path cap") {
    CHECK_THROWS_AS(run_adversarial(make_machine("sat-via-val"), parse_family("blocks 3; 0"), 4), PathCapExceeded);
    CHECK_NOTHROW(run_adversarial(make_machine("sat-via-val"), parse_family("blocks 3; 0"), 8));
}
