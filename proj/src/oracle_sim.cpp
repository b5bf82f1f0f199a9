#include "pph/oracle_sim.hpp"

#include "pph/error.hpp"

#include <algorithm>

namespace pph {

OracleAnswer PromiseOracle::ask(const Family& query) {
    const PromiseValue v = solve(problem_, query, cap_);
    if (v == PromiseValue::both) return {free_answer_, false};
    return {v == PromiseValue::one, true};
}

std::string format_transcript(const Transcript& t) {
    std::string out;
    for (const auto& c : t.calls) {
        out += "Q " + print_family(c.query) + " -> " + (c.answer.bit ? "1" : "0") +
               (c.answer.forced ? " forced\n" : " free\n");
    }
    out += std::string("OUT ") + (t.output ? "1" : "0") + "\n";
    return out;
}

namespace {

void require_one_block(const Family& f, const char* machine) {
    if (f.blocks() != 1) throw ShapeError(std::string(machine) + " takes a 1-block family");
}

// Fixes the input bit by bit from the oracle's first-bit answers, then checks
// the candidate against the input.
MachineFn bit_fixing(const char* name, Mutation mutation) {
    return [name, mutation](const Family& f, Oracle& oracle) {
        require_one_block(f, name);
        Bits candidate;
        Family current = f;
        for (int i = 0; i < f.width(1); ++i) {
            const bool b = oracle.ask(current).bit;
            candidate.push_back(b);
            current = fix_first_block_prefix(current, Bits{b});
        }
        if (mutation == Mutation::machine_skip_final_eval) return true;
        return evaluate(f, Assignment{candidate});
    };
}

MachineFn identity_machine() {
    return [](const Family& f, Oracle& oracle) { return oracle.ask(f).bit; };
}

// Replays a fixed prefix of free answers, then answers 0, remembering every
// free answer it gave.
class ReplayOracle : public Oracle {
public:
    ReplayOracle(ProblemKind problem, const std::vector<bool>& prefix, std::uint64_t cap)
        : problem_(problem), prefix_(prefix), cap_(cap) {}

    OracleAnswer ask(const Family& query) override {
        const PromiseValue v = solve(problem_, query, cap_);
        OracleAnswer a;
        if (v == PromiseValue::both) {
            a.bit = choices_.size() < prefix_.size() ? prefix_[choices_.size()] : false;
            choices_.push_back(a.bit);
        } else {
            a = {v == PromiseValue::one, true};
        }
        calls_.push_back({query, a});
        return a;
    }

    std::vector<QueryRecord>& calls() { return calls_; }
    const std::vector<bool>& choices() const { return choices_; }

private:
    ProblemKind problem_;
    const std::vector<bool>& prefix_;
    std::uint64_t cap_;
    std::vector<bool> choices_;
    std::vector<QueryRecord> calls_;
};

std::string canonical(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

} // namespace

const std::vector<std::string>& machine_names() {
    static const std::vector<std::string> names = {"sat-via-val", "usat-via-uval", "sat-identity", "usat-identity"};
    return names;
}

MachineSpec make_machine(std::string_view name, Mutation mutation) {
    const std::string n = canonical(name);
    if (n == "sat-via-val") return {n, ProblemKind::val, ProblemKind::sat, bit_fixing("sat-via-val", mutation)};
    if (n == "usat-via-uval") {
        return {n, ProblemKind::uval, ProblemKind::usat, bit_fixing("usat-via-uval", mutation)};
    }
    if (n == "sat-identity") return {n, ProblemKind::sat, ProblemKind::sat, identity_machine()};
    if (n == "usat-identity") return {n, ProblemKind::usat, ProblemKind::usat, identity_machine()};
    throw UnknownRule(std::string(name));
}

AdversaryTree run_adversarial(const MachineSpec& machine, const Family& input, std::uint64_t path_cap,
                              std::uint64_t cap) {
    if (path_cap < 1) throw PathCapExceeded("path cap must be at least 1");
    AdversaryTree tree;
    std::vector<bool> prefix;
    while (true) {
        if (tree.leaves.size() >= path_cap) {
            throw PathCapExceeded(std::to_string(path_cap) + " paths explored for " + machine.name);
        }
        ReplayOracle oracle(machine.oracle, prefix, cap);
        Transcript t;
        t.output = machine.run(input, oracle);
        t.calls = std::move(oracle.calls());
        const std::size_t n = t.calls.size();
        tree.max_calls = tree.leaves.empty() ? n : std::max(tree.max_calls, n);
        tree.min_calls = tree.leaves.empty() ? n : std::min(tree.min_calls, n);
        tree.leaves.push_back(std::move(t));

        // next path: flip the deepest free answer that is still 0
        std::vector<bool> choices = oracle.choices();
        while (!choices.empty() && choices.back()) choices.pop_back();
        if (choices.empty()) break;
        choices.back() = true;
        prefix = std::move(choices);
    }
    return tree;
}

Transcript run_single_path(const MachineSpec& machine, const Family& input, bool free_answer, std::uint64_t cap) {
    class Recording : public Oracle {
    public:
        Recording(ProblemKind p, bool free_answer, std::uint64_t cap) : inner_(p, free_answer, cap) {}
        OracleAnswer ask(const Family& q) override {
            const OracleAnswer a = inner_.ask(q);
            calls.push_back({q, a});
            return a;
        }
        std::vector<QueryRecord> calls;

    private:
        PromiseOracle inner_;
    } oracle(machine.oracle, free_answer, cap);
    Transcript t;
    t.output = machine.run(input, oracle);
    t.calls = std::move(oracle.calls);
    return t;
}

bool leaves_correct(const MachineSpec& machine, const Family& input, const AdversaryTree& tree, std::uint64_t cap) {
    const PromiseValue expected = solve(machine.source, input, cap);
    for (const Transcript& t : tree.leaves) {
        if (!contains(expected, t.output)) return false;
        for (const QueryRecord& q : t.calls) {
            if (!contains(solve(machine.oracle, q.query, cap), q.answer.bit)) return false;
        }
    }
    return true;
}

} // namespace pph
