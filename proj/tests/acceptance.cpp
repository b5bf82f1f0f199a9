// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "pph/harness.hpp"
#include "pph/hierarchy.hpp"
#include "pph/reductions.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace pph;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Tally {
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;
    std::string first_cex;

    void add(const Verdict& v) {
        pass += v.pass;
        fail += v.fail;
        if (!v.ok() && first_cex.empty()) first_cex = v.name + ": " + v.counterexample;
    }
    std::string summary() const {
        return std::to_string(pass) + " passed, " + std::to_string(fail) + " failed" +
               (first_cex.empty() ? "" : "; first failure " + first_cex);
    }
};

// Runtime limits are part of the criterion.
Outcome timed(double limit_s, const std::function<Outcome()>& body, double& seconds) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = body();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > limit_s) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
    }
    return o;
}

std::vector<std::string> family_rules() {
    std::vector<std::string> out;
    for (const auto& r : rule_names()) {
        if (is_family_rule(r)) out.push_back(r);
    }
    return out;
}

Outcome transforms() {
    Tally t;
    const auto rules = family_rules();
    for (const auto& r : rules) t.add(verify_rule_exhaustive(r, 3));
    return {t.fail == 0 && rules.size() == 13 && t.pass > 0,
            std::to_string(rules.size()) + " transforms at m=3: " + t.summary()};
}

Outcome gadget() {
    Tally t;
    bool widths_ok = true;
    for (int m = 1; m <= 3; ++m) {
        t.add(verify_rule_exhaustive("maxval_to_uvaln1", m));
        t.add(verify_gadget_promise(m));
        const Family g = apply_rule("maxval_to_uvaln1", table_family({m}, 1));
        widths_ok = widths_ok && g.width(2) == m * (m - 1) / 2;
    }
    return {t.fail == 0 && widths_ok, "m=1..3 with UVAL2 promise, universal widths 0,1,3 " +
                                          std::string(widths_ok ? "confirmed" : "WRONG") + ": " + t.summary()};
}

Outcome lifts() {
    Tally t;
    for (const auto& r : family_rules()) t.add(verify_rule_lifts(r, kSeed, 500, 100));
    return {t.fail == 0, "500 level-2 + 100 level-3 families per transform: " + t.summary()};
}

Outcome compiler() {
    Tally t;
    t.add(verify_compiler(kSeed, 100));
    return {t.fail == 0 && t.pass == 100, "100 circuits, every alpha: " + t.summary()};
}

Outcome intersections() {
    Tally t;
    t.add(verify_intersections_exhaustive(1, 1));
    t.add(verify_intersections_sampled(2, 2, kSeed, 1000));
    return {t.fail == 0, "exhaustive at (1,1), 1000 sampled pairs at (2,2): " + t.summary()};
}

Outcome machines() {
    Tally t;
    t.add(verify_machine("sat-via-val", 3));
    t.add(verify_machine("usat-via-uval", 3));
    return {t.fail == 0 && t.pass == 2 * (4 + 16 + 256), "all tables m<=3, m calls per path: " + t.summary()};
}

Outcome isolation(std::string& report) {
    const VvStats s = verify_vv({2, 3, 4}, 200, kSeed);
    report = s.isolation.note;
    const bool ok = s.soundness.ok() && s.completeness.ok() && s.isolation.ok();
    std::string detail = "soundness " + std::to_string(s.soundness.pass) + "/" +
                         std::to_string(s.soundness.pass + s.soundness.fail) + ", completeness " +
                         std::to_string(s.completeness.pass) + "/" +
                         std::to_string(s.completeness.pass + s.completeness.fail) + " functions at >= 2/3, isolation " +
                         std::to_string(s.isolation.pass) + "/3 levels above 1/(8m) - 3 sigma";
    for (const Verdict* v : {&s.soundness, &s.completeness, &s.isolation}) {
        if (!v->ok()) detail += "; " + v->name + ": " + v->counterexample;
    }
    return {ok, detail};
}

Outcome hierarchy() {
    try {
        const Hierarchy h = build_hierarchy();
        const std::string dot = emit_hierarchy_dot(h);
        std::size_t solid = 0, unverified = 0;
        for (const auto& e : h.edges) {
            solid += e.verified;
            unverified += e.needs_verification() && !e.verified;
        }
        const bool symmetric = duality_symmetric(h);
        return {unverified == 0 && symmetric && h.nodes.size() == 15 && !dot.empty(),
                std::to_string(h.nodes.size()) + " nodes, " + std::to_string(h.edges.size()) + " tagged edges, " +
                    std::to_string(solid) + " verified solid, " + std::to_string(unverified) +
                    " computable edges unverified, duality " + (symmetric ? "ok" : "BROKEN")};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

Outcome mutations() {
    std::string detail;
    bool all = true;
    for (Mutation m : all_mutations()) {
        Tally t;
        for (const auto& r : family_rules()) t.add(verify_rule_exhaustive(r, 3, m));
        for (int k = 1; k <= 3; ++k) t.add(verify_gadget_promise(k, m));
        t.add(verify_machine("sat-via-val", 3, m));
        t.add(verify_machine("usat-via-uval", 3, m));
        all = all && t.fail > 0;
        detail += (detail.empty() ? "" : ", ") + to_string(m) + " caught " + std::to_string(t.fail) + "x";
    }
    return {all, detail};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    std::string vv_report;
    const std::vector<Criterion> criteria = {
        {1, "reduction transforms, exhaustive", 60, transforms},
        {2, "MAXVAL to UVAL2 gadget", 120, gadget},
        {3, "level-2 and level-3 lifts", 600, lifts},
        {4, "oracle-circuit compiler", 120, compiler},
        {5, "VAL and UVAL intersections", 600, intersections},
        {6, "bit-fixing oracle machines", 600, machines},
        {7, "randomized isolation", 300, [&] { return isolation(vv_report); }},
        {8, "hierarchy diagram", 600, hierarchy},
        {9, "mutation sensitivity", 600, mutations},
    };
    bool all = true;
    for (const auto& c : criteria) {
        double seconds = 0;
        const Outcome o = timed(c.limit_s, c.run, seconds);
        all = all && o.pass;
        std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), seconds);
        if (c.id == 7) std::printf("%s", vv_report.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
