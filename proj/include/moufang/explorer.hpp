#pragma once

// Closure search over isomorphism classes: starting from seed tables, apply
// every cyclic and dihedral parameter tuple, identify outputs up to
// isomorphism, and keep going until no new class appears. The resulting
// class graph is symmetric (every edge has a stored reverse witness) and
// splits into components with constant nucleus and associator-subloop sizes.

#include <string>
#include <vector>

#include "moufang/loop.hpp"

namespace moufang {

struct GraphNode {
    LoopTable table; // first-discovered representative of the class
    Fingerprint fp;
};

struct GraphEdge {
    int from = 0, to = 0;
    bool dihedral = false;
    std::string witness; // parameter text on the source representative
};

struct ConstructionGraph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges; // directed; symmetric by construction
    std::vector<int> seed_ids;    // node id of each seed, first appearance order
};

struct ClosureOptions {
    bool nonassociative_only = true; // drop associative outputs (and refuse associative seeds)
    int jobs = 0;                    // 0: MOUFANG_JOBS env var, else hardware concurrency
};

// BFS over classes; result is independent of the number of jobs
ConstructionGraph closure(const std::vector<LoopTable>& seeds, const ClosureOptions& = {});

struct ComponentReport {
    std::vector<int> members; // node ids, ascending
    int nucleus_size = 0;     // shared by every member (asserted)
    int assoc_size = 0;       // associator-subloop size shared by every member (asserted)
};

std::vector<ComponentReport> components(const ConstructionGraph&);

// deterministic DOT text: nodes sorted by fingerprint key, edges by endpoints
std::string export_dot(const ConstructionGraph&);

// deterministic JSON summary: order, class count, components, edge counts
std::string summary_json(const ConstructionGraph&);

} // namespace moufang
