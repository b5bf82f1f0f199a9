#include "pph/vv.hpp"

#include "pph/error.hpp"

#include <bit>

namespace pph {

namespace {

Expr exclusive_or(const Expr& a, const Expr& b) { return (a | b) & !(a & b); }

Expr balanced_parity(const std::vector<Expr>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return exclusive_or(balanced_parity(terms, lo, mid), balanced_parity(terms, mid, hi));
}

struct Resolved {
    int m;
    int trials;
    int k_min;
    int k_max;
};

Resolved resolve(int m, const VvOptions& o) {
    if (m < 1) throw ShapeError("isolation needs at least one variable");
    Resolved r{m, o.trials > 0 ? o.trials : 24 * m, o.k_min, o.k_max > 0 ? o.k_max : m + 1};
    if (r.k_min < 1 || r.k_max > m + 1 || r.k_min > r.k_max) {
        throw ShapeError("k range [" + std::to_string(r.k_min) + ", " + std::to_string(r.k_max) +
                         "] must lie within [1, " + std::to_string(m + 1) + "]");
    }
    return r;
}

HashConstraint trial_hash(const Resolved& r, std::uint64_t seed, int trial) {
    RandomSource rng = RandomSource(seed).split(static_cast<std::uint64_t>(trial));
    const int k = r.k_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(r.k_max - r.k_min + 1)));
    return sample_hash(r.m, k, rng);
}

// Bit x of the result is set iff the packed assignment x satisfies h.
std::uint64_t subspace_mask(const HashConstraint& h) {
    std::vector<std::uint64_t> rows;
    for (const Bits& row : h.rows) rows.push_back(from_bits(row));
    std::uint64_t mask = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << h.m); ++x) {
        bool ok = true;
        for (std::size_t j = 0; j < rows.size() && ok; ++j) {
            ok = (std::popcount(rows[j] & x) & 1) == static_cast<int>(h.offsets[j]);
        }
        if (ok) mask |= std::uint64_t{1} << x;
    }
    return mask;
}

} // namespace

HashConstraint sample_hash(int m, int k, RandomSource& rng) {
    if (m < 0 || k < 1 || k > m + 1) {
        throw ShapeError("hash with k=" + std::to_string(k) + " rows over m=" + std::to_string(m) +
                         " variables; need 1 <= k <= m+1");
    }
    HashConstraint h;
    h.m = m;
    for (int j = 0; j < k; ++j) {
        Bits row(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) row[static_cast<std::size_t>(i)] = rng.bit();
        h.rows.push_back(std::move(row));
    }
    for (int j = 0; j < k; ++j) h.offsets.push_back(rng.bit());
    return h;
}

bool satisfies(const HashConstraint& h, const Bits& x) {
    for (std::size_t j = 0; j < h.rows.size(); ++j) {
        bool parity = false;
        for (int i = 0; i < h.m; ++i) parity ^= h.rows[j][static_cast<std::size_t>(i)] && x[static_cast<std::size_t>(i)];
        if (parity != h.offsets[j]) return false;
    }
    return true;
}

Family conjoin_hash(const Family& f, const HashConstraint& h) {
    if (f.blocks() != 1 || f.width(1) != h.m) {
        throw ShapeError("hash over " + std::to_string(h.m) + " variables needs a 1-block family of that width");
    }
    Expr body = f.body();
    for (std::size_t j = 0; j < h.rows.size(); ++j) {
        std::vector<Expr> terms;
        for (int i = 0; i < h.m; ++i) {
            if (h.rows[j][static_cast<std::size_t>(i)]) terms.push_back(Expr::variable(1, i + 1));
        }
        const Expr parity = terms.empty() ? Expr::constant(false) : balanced_parity(terms, 0, terms.size());
        body = body & (h.offsets[j] ? parity : !parity);
    }
    return Family(f.widths(), body);
}

VvRun vv_run(const Family& f, std::uint64_t seed, const VvOptions& options, Oracle& usat_oracle) {
    if (f.blocks() != 1) throw ShapeError("isolation takes a 1-block family");
    const Resolved r = resolve(f.width(1), options);
    VvRun run;
    for (int i = 0; i < r.trials; ++i) {
        VvTrial t{trial_hash(r, seed, i), f, {}};
        t.query = conjoin_hash(f, t.hash);
        t.answer = usat_oracle.ask(t.query);
        const bool hit = t.answer.bit;
        run.trials.push_back(std::move(t));
        if (hit) {
            run.output = true;
            break;
        }
    }
    return run;
}

bool vv_decide(const Family& f, std::uint64_t seed, const VvOptions& options) {
    PromiseOracle oracle(ProblemKind::usat, false);
    return vv_run(f, seed, options, oracle).output;
}

MachineSpec vv_machine(std::uint64_t seed, const VvOptions& options) {
    return {"vv", ProblemKind::usat, ProblemKind::sat,
            [seed, options](const Family& f, Oracle& oracle) { return vv_run(f, seed, options, oracle).output; }};
}

std::vector<std::uint64_t> vv_trial_masks(int m, std::uint64_t seed, const VvOptions& options) {
    if (m > 6) throw CapExceeded("packed tables hold at most 6 variables");
    const Resolved r = resolve(m, options);
    std::vector<std::uint64_t> masks;
    masks.reserve(static_cast<std::size_t>(r.trials));
    for (int i = 0; i < r.trials; ++i) masks.push_back(subspace_mask(trial_hash(r, seed, i)));
    return masks;
}

VvFastResult vv_decide_masks(std::uint64_t table, std::span<const std::uint64_t> masks) {
    VvFastResult out;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const int survivors = std::popcount(table & masks[i]);
        if (i == 0) out.first_trial_isolated = survivors == 1;
        out.trials_used = static_cast<int>(i + 1);
        // 0 survivors: forced 0; 2 or more: promise broken, the adversary says 0
        if (survivors == 1) {
            out.output = true;
            break;
        }
    }
    return out;
}

VvFastResult vv_decide_table(std::uint64_t table, int m, std::uint64_t seed, const VvOptions& options) {
    return vv_decide_masks(table, vv_trial_masks(m, seed, options));
}

std::string format_vv_run(const VvRun& run) {
    std::string out;
    for (std::size_t i = 0; i < run.trials.size(); ++i) {
        const VvTrial& t = run.trials[i];
        out += "TRIAL " + std::to_string(i) + " k=" + std::to_string(t.hash.rows.size()) + "\n";
        out += "Q " + print_family(t.query) + " -> " + (t.answer.bit ? "1" : "0") +
               (t.answer.forced ? " forced\n" : " free\n");
    }
    out += std::string("OUT ") + (run.output ? "1" : "0") + "\n";
    return out;
}

} // namespace pph
