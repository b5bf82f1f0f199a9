#pragma once

// Verification campaigns: exhaustive and seeded checks over every module,
// reported as `CHECK <name> pass=<n> fail=<n> time=<ms>` lines.

#include "pph/expr.hpp"
#include "pph/mutation.hpp"
#include "pph/random.hpp"
#include "pph/reductions.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pph {

struct Verdict {
    std::string name;
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;
    std::string counterexample; // first failure, with a replay command
    std::uint64_t ms = 0;
    std::string note;           // optional measurements, printed after the CHECK line

    bool ok() const noexcept { return fail == 0; }
};

std::string format_verdict(const Verdict& v);

/// Runs `check(i)` for i in [0, n) over `jobs` threads. A check returns
/// nullopt on success or a counterexample. The reported counterexample is
/// the one with the lowest index, so the result does not depend on `jobs`.
Verdict run_instances(std::string name, std::uint64_t n, int jobs,
                      const std::function<std::optional<std::string>(std::uint64_t)>& check);

/// The family whose truth table is `code`, first entry in the most
/// significant of the 2^(total width) bits.
Family table_family(std::vector<int> widths, std::uint64_t code);
std::uint64_t table_count(const std::vector<int>& widths);

/// One family per boolean function of m variables, in table order.
/// Throws CapExceeded for m > 4.
std::vector<Family> enumerate_truth_tables(int m);

/// Random expression with at most `size_budget` nodes over the given blocks.
Family random_family(const std::vector<int>& widths, int size_budget, RandomSource& rng);

/// check_rule over every instance of total width exactly m at the rule's
/// natural level (1, or 2 for dual_uvaln); pi1_to_uval takes every m-bit string.
Verdict verify_rule_exhaustive(std::string_view rule, int m, Mutation mutation = Mutation::none, int jobs = 1);

/// check_rule over every 2-block family with both widths ≥ 1 and total ≤ max_total.
Verdict verify_rule_two_block(std::string_view rule, int max_total, Mutation mutation = Mutation::none,
                              int jobs = 1);

/// Random level-2 families with widths ≤ (2,2) and level-3 ones ≤ (2,1,1).
Verdict verify_rule_lifts(std::string_view rule, std::uint64_t seed, int level2_count, int level3_count,
                          Mutation mutation = Mutation::none, int jobs = 1);

/// The gadget lands inside the UVAL₂ promise for every satisfiable f at m.
Verdict verify_gadget_promise(int m, Mutation mutation = Mutation::none, int jobs = 1);

/// VAL / UVAL containments for every (g, h, x) at the given widths.
Verdict verify_intersections_exhaustive(int x_width, int y_width, int jobs = 1);
Verdict verify_intersections_sampled(int x_width, int y_width, std::uint64_t seed, int pairs, int jobs = 1);

/// Σ₂ value, unique w with π₁w = σ(α), and per-x ∃!s / ∃!t, for every α.
Verdict verify_compiler(std::uint64_t seed, int circuits, int jobs = 1);

/// Every adversarial leaf correct and exactly m oracle calls per path, all tables m ≤ max_m.
Verdict verify_machine(std::string_view machine, int max_m, Mutation mutation = Mutation::none, int jobs = 1);

struct VvStats {
    Verdict soundness;
    Verdict completeness;
    Verdict isolation;
};
/// Soundness over all functions at m = 2; completeness and isolation over
/// every satisfiable f at each m in `ms`, `seeds` seeds each, t = 24m.
VvStats verify_vv(const std::vector<int>& ms, int seeds, std::uint64_t base_seed, int jobs = 1);

struct CampaignOptions {
    std::uint64_t seed = 0;
    int jobs = 1;
    bool nightly = false;       // exhaustive one-block rule checks at m = 4 as well
    Mutation mutation = Mutation::none;
    std::string cex_dir;        // counterexample files, when non-empty
    std::vector<std::string> only; // check-name prefixes; empty runs everything
};

/// Runs the full campaign, calling `report` as each verdict completes.
std::vector<Verdict> run_campaign(const CampaignOptions& options,
                                  const std::function<void(const Verdict&)>& report = {});

/// Writes `<dir>/<name>.cex` for a failed verdict; returns the path.
std::string write_counterexample(const std::string& dir, const Verdict& v);

} // namespace pph
