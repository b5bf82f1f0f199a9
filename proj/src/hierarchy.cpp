#include "pph/hierarchy.hpp"

#include "pph/error.hpp"
#include "pph/harness.hpp"
#include "pph/reductions.hpp"
#include "pph/semantics.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace pph {

namespace {

constexpr const char* kDeltaTheorem = "P^SAT_n contains SAT_n (one oracle call)";
constexpr const char* kUniqueDeltaLower = "P^USAT_n contains USAT_n (one oracle call)";
constexpr const char* kUniqueDeltaUpper = "P^USAT_n within P^SAT_n (USAT_n reduces to SAT_n)";

std::string swap_dual(const std::string& id) {
    static const std::map<std::string, std::string> kSwap = {
        {"S1", "Pi1"}, {"Pi1", "S1"}, {"S2", "Pi2"}, {"Pi2", "S2"},
        {"US1", "UCS1"}, {"UCS1", "US1"}, {"US2", "UCS2"}, {"UCS2", "US2"}};
    const auto it = kSwap.find(id);
    return it == kSwap.end() ? id : it->second;
}

// The problem whose strong closure a node denotes, for nodes named by one.
std::optional<ProblemId> node_problem(const std::string& id) {
    static const std::map<std::string, ProblemKind> kKinds = {{"UV", ProblemKind::uval}, {"V", ProblemKind::val},
                                                              {"US", ProblemKind::usat}, {"UCS", ProblemKind::cousat},
                                                              {"S", ProblemKind::sat},   {"Pi", ProblemKind::cosat}};
    const auto digits = id.find_first_of("0123456789");
    if (digits == std::string::npos) return std::nullopt;
    const auto it = kKinds.find(id.substr(0, digits));
    if (it == kKinds.end()) return std::nullopt;
    return ProblemId{it->second, std::stoi(id.substr(digits))};
}

} // namespace

std::string to_string(WitnessKind k) {
    switch (k) {
    case WitnessKind::rule: return "rule";
    case WitnessKind::composition: return "composition";
    case WitnessKind::compiled_theorem: return "compiled-theorem";
    case WitnessKind::registry_theorem: return "registry-theorem";
    }
    return "?";
}

const std::vector<HierarchyNode>& hierarchy_nodes() {
    static const std::vector<HierarchyNode> nodes = {
        {"P", "P̂", 0},        {"UV1", "ÛV₁", 1},   {"V1", "V̂₁", 1},     {"US1", "ÛS₁", 1},  {"UCS1", "ÛCS₁", 1},
        {"S1", "Σ̂₁", 1},      {"Pi1", "Π̂₁", 1},    {"UD2", "ÛΔ̂₂", 2},   {"D2", "Δ̂₂", 2},    {"UV2", "ÛV₂", 2},
        {"V2", "V̂₂", 2},      {"US2", "ÛS₂", 2},   {"UCS2", "ÛCS₂", 2}, {"S2", "Σ̂₂", 2},    {"Pi2", "Π̂₂", 2},
    };
    return nodes;
}

const std::vector<std::pair<std::string, std::string>>& diagram_arrows() {
    static const std::vector<std::pair<std::string, std::string>> arrows = [] {
        std::vector<std::pair<std::string, std::string>> a = {{"P", "UV1"}};
        for (const std::string n : {"1", "2"}) {
            a.insert(a.end(), {{"UV" + n, "V" + n},
                               {"UV" + n, "US" + n},
                               {"UV" + n, "UCS" + n},
                               {"US" + n, "S" + n},
                               {"UCS" + n, "Pi" + n},
                               {"V" + n, "S" + n},
                               {"V" + n, "Pi" + n}});
            if (n == "1") {
                a.insert(a.end(), {{"US1", "UD2"}, {"UCS1", "UD2"}, {"UD2", "D2"}, {"S1", "D2"}, {"Pi1", "D2"},
                                   {"D2", "UV2"}});
            }
        }
        return a;
    }();
    return arrows;
}

std::vector<HierarchyEdge> witness_registry() {
    using K = WitnessKind;
    std::vector<HierarchyEdge> r;
    r.push_back({"P", "UV1", K::rule, "pi1_to_uval", 0});
    for (int level : {1, 2}) {
        const std::string n = std::to_string(level);
        r.push_back({"UV" + n, "V" + n, K::rule, "uval_to_val", level});
        r.push_back({"UV" + n, "US" + n, K::rule, "uval_to_usat", level});
        r.push_back({"UV" + n, "UCS" + n, K::composition, "dual_uval;uval_to_usat;dual_usat", level});
        r.push_back({"US" + n, "S" + n, K::rule, "usat_to_sat", level});
        r.push_back({"UCS" + n, "Pi" + n, K::composition, "converse(dual_usat);usat_to_sat;dual_sat", level});
        r.push_back({"V" + n, "S" + n, K::composition, "val_to_maxval;maxval_to_sat", level});
        r.push_back({"V" + n, "Pi" + n, K::composition, "dual_val;val_to_maxval;maxval_to_sat;dual_sat", level});
    }
    r.push_back({"US1", "UD2", K::registry_theorem, kUniqueDeltaLower, 1});
    r.push_back({"UCS1", "UD2", K::registry_theorem, kUniqueDeltaLower, 1});
    r.push_back({"UD2", "D2", K::registry_theorem, kUniqueDeltaUpper, 2});
    r.push_back({"S1", "D2", K::registry_theorem, kDeltaTheorem, 1});
    r.push_back({"Pi1", "D2", K::registry_theorem, kDeltaTheorem, 1});
    r.push_back({"D2", "UV2", K::compiled_theorem, "compile_uval2", 2});
    return r;
}

Hierarchy assemble_hierarchy(std::vector<HierarchyEdge> registry) {
    std::set<std::string> ids;
    for (const auto& n : hierarchy_nodes()) ids.insert(n.id);
    for (const auto& e : registry) {
        if (!ids.count(e.from) || !ids.count(e.to)) {
            throw IncompleteRegistry("witness for unknown arrow " + e.from + " -> " + e.to);
        }
    }
    Hierarchy h{hierarchy_nodes(), {}};
    for (const auto& [from, to] : diagram_arrows()) {
        const auto it = std::find_if(registry.begin(), registry.end(), [&](const HierarchyEdge& e) {
            return e.from == from && e.to == to && !e.witness.empty();
        });
        if (it == registry.end()) throw IncompleteRegistry("no witness for " + from + " -> " + to);
        h.edges.push_back(*it);
    }
    return h;
}

void verify_edge(HierarchyEdge& edge, Mutation mutation, int jobs) {
    Verdict v;
    switch (edge.kind) {
    case WitnessKind::registry_theorem:
        return;
    case WitnessKind::compiled_theorem:
        v = verify_compiler(1, 20, jobs);
        break;
    case WitnessKind::rule:
    case WitnessKind::composition:
        if (edge.witness == "pi1_to_uval") {
            for (int m = 1; m <= 3; ++m) {
                const Verdict part = verify_rule_exhaustive("pi1_to_uval", m, mutation, jobs);
                v.pass += part.pass;
                v.fail += part.fail;
            }
            break;
        }
        const ReductionRule rule = rule_chain(edge.witness, edge.level, mutation);
        if (rule.source != node_problem(edge.from) || rule.target != node_problem(edge.to)) {
            // the witness does not connect these two classes
            edge.instances = 0;
            edge.verified = false;
            return;
        }
        std::vector<std::vector<int>> shapes;
        if (edge.level == 1) {
            for (int m = 1; m <= 3; ++m) shapes.push_back({m});
        } else {
            for (int a = 1; a <= 3; ++a) {
                for (int b = 0; a + b <= 3; ++b) shapes.push_back({a, b});
            }
        }
        for (const auto& shape : shapes) {
            const Verdict part = run_instances(edge.witness, table_count(shape), jobs,
                                               [&](std::uint64_t code) -> std::optional<std::string> {
                if (check_rule(rule, table_family(shape, code)).pass) return std::nullopt;
                return print_family(table_family(shape, code));
            });
            v.pass += part.pass;
            v.fail += part.fail;
        }
        break;
    }
    edge.instances = v.pass + v.fail;
    edge.verified = v.fail == 0 && v.pass > 0;
}

Hierarchy build_hierarchy(int jobs, Mutation mutation) {
    Hierarchy h = assemble_hierarchy(witness_registry());
    for (HierarchyEdge& e : h.edges) verify_edge(e, mutation, jobs);
    return h;
}

std::string emit_hierarchy_dot(const Hierarchy& h) {
    std::ostringstream out;
    out << "digraph promise_hierarchy {\n  rankdir=LR;\n  node [shape=plaintext];\n";
    for (const auto& n : h.nodes) out << "  " << n.id << " [label=\"" << n.label << "\"];\n";
    for (const auto& e : h.edges) {
        out << "  " << e.from << " -> " << e.to << " [style=" << (e.verified ? "solid" : "dashed")
            << ", tooltip=\"" << to_string(e.kind) << ": " << e.witness << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

bool duality_symmetric(const Hierarchy& h) {
    using Key = std::tuple<std::string, std::string, bool>;
    std::set<Key> edges, mirrored;
    for (const auto& e : h.edges) {
        edges.insert({e.from, e.to, e.verified});
        mirrored.insert({swap_dual(e.from), swap_dual(e.to), e.verified});
    }
    std::set<std::string> nodes, mirrored_nodes;
    for (const auto& n : h.nodes) {
        nodes.insert(n.id);
        mirrored_nodes.insert(swap_dual(n.id));
    }
    return edges == mirrored && nodes == mirrored_nodes;
}

} // namespace pph
