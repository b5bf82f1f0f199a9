#pragma once

// The inclusion diagram of strong closures for levels n ≤ 2, each arrow
// carrying the witness that establishes it. Arrows whose witness is
// computable are re-verified before the diagram is emitted.

#include "pph/mutation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pph {

struct HierarchyNode {
    std::string id;    // ASCII, used in DOT
    std::string label; // UTF-8 display label
    int level = 0;
};

enum class WitnessKind { rule, composition, compiled_theorem, registry_theorem };

std::string to_string(WitnessKind k);

struct HierarchyEdge {
    std::string from;
    std::string to;
    WitnessKind kind = WitnessKind::registry_theorem;
    std::string witness; // rule name, "r1;r2;...", or a theorem description
    int level = 1;       // level at which rule witnesses are instantiated
    bool verified = false;
    std::uint64_t instances = 0;

    bool needs_verification() const noexcept { return kind != WitnessKind::registry_theorem; }
};

struct Hierarchy {
    std::vector<HierarchyNode> nodes;
    std::vector<HierarchyEdge> edges;
};

const std::vector<HierarchyNode>& hierarchy_nodes();

/// Every arrow of the complete diagram for n ≤ 2, as (from, to) node ids.
const std::vector<std::pair<std::string, std::string>>& diagram_arrows();

/// Witness registry, nothing verified yet.
std::vector<HierarchyEdge> witness_registry();

/// Checks that every diagram arrow has a witness; throws IncompleteRegistry otherwise.
Hierarchy assemble_hierarchy(std::vector<HierarchyEdge> registry);

/// Verifies one computable edge: rule chains exhaustively over every family
/// of total width ≤ 3 at the edge's level, the level-0 rule on all strings of
/// length ≤ 3, the compiled theorem on 20 seeded circuits.
void verify_edge(HierarchyEdge& edge, Mutation mutation = Mutation::none, int jobs = 1);

/// assemble_hierarchy(witness_registry()) with every computable edge verified.
Hierarchy build_hierarchy(int jobs = 1, Mutation mutation = Mutation::none);

/// DOT text: verified edges solid, registry-only (or unverified) edges dashed.
std::string emit_hierarchy_dot(const Hierarchy& h);

/// The (from, to, style) edge set is invariant under Σ̂ₙ↔Π̂ₙ, ÛSₙ↔ÛCSₙ.
bool duality_symmetric(const Hierarchy& h);

} // namespace pph
