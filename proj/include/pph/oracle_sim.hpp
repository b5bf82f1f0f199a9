#pragma once

// Oracle machines under adversarial resolution: on a query outside the
// oracle problem's promise either answer may come back, and a machine is
// correct only if every resolution leads to an acceptable output.

#include "pph/expr.hpp"
#include "pph/mutation.hpp"
#include "pph/semantics.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pph {

struct OracleAnswer {
    bool bit = false;
    bool forced = false; // the queried value was a singleton
};

class Oracle {
public:
    virtual ~Oracle() = default;
    virtual OracleAnswer ask(const Family& query) = 0;
};

/// Answers from the brute-force value; free queries get `free_answer`.
class PromiseOracle : public Oracle {
public:
    explicit PromiseOracle(ProblemKind problem, bool free_answer = false, std::uint64_t cap = kDefaultCap)
        : problem_(problem), free_answer_(free_answer), cap_(cap) {}
    OracleAnswer ask(const Family& query) override;

private:
    ProblemKind problem_;
    bool free_answer_;
    std::uint64_t cap_;
};

struct QueryRecord {
    Family query;
    OracleAnswer answer;
};

struct Transcript {
    std::vector<QueryRecord> calls;
    bool output = false;
};

/// One `Q <family> -> <bit> [forced|free]` line per call, then `OUT <bit>`.
std::string format_transcript(const Transcript& t);

using MachineFn = std::function<bool(const Family& input, Oracle& oracle)>;

struct MachineSpec {
    std::string name;
    ProblemKind oracle;  // level follows each query's block count
    ProblemKind source;  // the problem the machine is meant to solve
    MachineFn run;
};

/// "sat-via-val", "usat-via-uval", "sat-identity", "usat-identity"
/// (underscores accepted). Throws UnknownRule.
MachineSpec make_machine(std::string_view name, Mutation mutation = Mutation::none);
const std::vector<std::string>& machine_names();

/// Every resolution of the free queries, explored depth-first with answer 0
/// before 1. Throws PathCapExceeded past `path_cap` leaves.
struct AdversaryTree {
    std::vector<Transcript> leaves;
    std::size_t max_calls = 0;
    std::size_t min_calls = 0;
};
AdversaryTree run_adversarial(const MachineSpec& machine, const Family& input, std::uint64_t path_cap = 1u << 16,
                              std::uint64_t cap = kDefaultCap);

/// A single path with every free query answered `free_answer`.
Transcript run_single_path(const MachineSpec& machine, const Family& input, bool free_answer = false,
                           std::uint64_t cap = kDefaultCap);

/// Every leaf output lies in solve(source, input) and no forced answer
/// contradicts its query's value.
bool leaves_correct(const MachineSpec& machine, const Family& input, const AdversaryTree& tree,
                    std::uint64_t cap = kDefaultCap);

} // namespace pph
