#pragma once

#include "coral/lattice.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coral {

enum class VertexClass { Interior, Negative };

/// Combinatorial coral graph: a tree with half-edges (positive edges) and a
/// distinguished set of negative vertices. Edge and vertex ids are opaque
/// non-negative integers sharing one id space per kind.
struct CoralGraph {
    std::map<int, VertexClass> vertices;
    std::map<int, int> positive_edges;                  // edge id -> endpoint vertex
    std::map<int, std::pair<int, int>> bounded_edges;   // edge id -> {v, w}
    std::map<int, Int> weights;                         // edge id -> weight >= 1
    std::vector<int> labels;                            // ordered positive edge ids (the labelling E)
};

bool operator==(const CoralGraph& a, const CoralGraph& b);

/// Half-edges of the extension, split by origin.
enum class EndKind { Positive, NegativeFromUnivalent, NegativeInserted };

struct ExtendedGraph {
    std::map<int, VertexClass> vertices;               // univalent negative vertices removed
    std::map<int, std::pair<int, int>> bounded_edges;
    std::map<int, int> ends;                           // unbounded edge id -> base vertex
    std::map<int, EndKind> end_kind;
    std::map<int, Int> weights;                        // w~ on every edge
    std::vector<int> labels;                           // inherited ordering of positive ends
};

/// Number of incident edges (positive half-edges included).
int valency(const CoralGraph& g, int vertex);

/// Edge ids incident to a vertex, ascending.
std::vector<int> incident_edges(const CoralGraph& g, int vertex);

/// Checks the bilateral-graph conditions. Empty report means valid.
std::vector<std::string> validate_graph(const CoralGraph& g);

inline bool is_valid_graph(const CoralGraph& g) { return validate_graph(g).empty(); }

/// Extension: univalent negative vertices are removed (their edge becomes a
/// half-edge keeping its weight) and every surviving negative vertex gains a
/// fresh half-edge. Weights for inserted half-edges come from negvert_weights
/// when provided, else default to 1.
ExtendedGraph extend_graph(const CoralGraph& g, const std::map<int, Int>* negvert_weights = nullptr);

}  // namespace coral
