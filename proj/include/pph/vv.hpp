#pragma once

// Randomized reduction SAT ∝_R USAT by affine isolation: conjoin random
// parity constraints until, with noticeable probability, exactly one
// solution survives, and ask a USAT oracle about the result.

#include "pph/expr.hpp"
#include "pph/oracle_sim.hpp"
#include "pph/random.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pph {

/// k affine constraints row_j · x = offset_j over the two-element field.
struct HashConstraint {
    int m = 0;
    std::vector<Bits> rows;
    Bits offsets;
};

/// Rows then offsets, each bit from one draw. Throws ShapeError unless 1 ≤ k ≤ m+1.
HashConstraint sample_hash(int m, int k, RandomSource& rng);

/// x satisfies every row.
bool satisfies(const HashConstraint& h, const Bits& x);

/// f ∧ (parity constraints), each parity a balanced tree of (a∨b)∧¬(a∧b).
/// Throws ShapeError unless f has one block of width h.m.
Family conjoin_hash(const Family& f, const HashConstraint& h);

struct VvOptions {
    int trials = 0; // 0 means 24m
    int k_min = 2;
    int k_max = 0;  // 0 means m+1
};

struct VvTrial {
    HashConstraint hash;
    Family query;
    OracleAnswer answer;
};

struct VvRun {
    bool output = false;
    std::vector<VvTrial> trials;
};

/// Trial i draws from RandomSource(seed).split(i): first k uniform in
/// [k_min, k_max], then the hash. Stops at the first oracle answer 1.
VvRun vv_run(const Family& f, std::uint64_t seed, const VvOptions& options, Oracle& usat_oracle);

/// vv_run against a USAT oracle that answers 0 on promise violations.
bool vv_decide(const Family& f, std::uint64_t seed, const VvOptions& options = {});

/// The decision as an oracle machine, for adversarial exploration.
MachineSpec vv_machine(std::uint64_t seed, const VvOptions& options = {});

/// vv_run with the answer-0 adversary, computed on a packed truth table
/// (entry j at bit j, m ≤ 6) instead of building query families. Uses the
/// same random draws, so it agrees with vv_decide bit for bit.
struct VvFastResult {
    bool output = false;
    bool first_trial_isolated = false;
    int trials_used = 0;
};
VvFastResult vv_decide_table(std::uint64_t table, int m, std::uint64_t seed, const VvOptions& options = {});

/// The per-trial surviving-assignment masks for a seed. They do not depend
/// on f, so statistics over many functions can share them.
std::vector<std::uint64_t> vv_trial_masks(int m, std::uint64_t seed, const VvOptions& options = {});
VvFastResult vv_decide_masks(std::uint64_t table, std::span<const std::uint64_t> masks);

std::string format_vv_run(const VvRun& run);

} // namespace pph
