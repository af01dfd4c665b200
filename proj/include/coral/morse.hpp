#pragma once

#include "coral/coral.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coral {

/// Rooted ribbon tree with a map to the line (the universal cover of the
/// circle). Adjacency lists are in anticlockwise cyclic order; the root is an
/// external vertex. decoration holds the region integers n_0..n_d, regions
/// numbered anticlockwise from the root.
struct MorseTree {
    std::map<int, std::vector<int>> adjacency;
    int root = -1;
    std::vector<Int> decoration;
    std::map<int, Rat> phi;
};

bool operator==(const MorseTree& a, const MorseTree& b);

using EdgeKey = std::pair<int, int>;  // (min, max) vertex ids

inline EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct EdgeVelocity {
    int child = -1, parent = -1;  // orientation toward the root
    Int accel;                    // region difference across the edge
    Rat v_start, v_end;           // velocity at the child / parent end
    bool contracted = false;      // image is a point
};

struct VelocityProfile {
    std::map<EdgeKey, EdgeVelocity> edges;
    std::vector<int> contour;  // externals x_1..x_d in anticlockwise order (root excluded)
};

/// Checks Morse-tree structure, endpoint rationality, velocity balancing,
/// sign conditions, root velocity and the contraction law. The profile is
/// returned when the report is empty.
std::pair<std::vector<std::string>, std::optional<VelocityProfile>> validate_tmt(const MorseTree& m);

inline bool is_valid_tmt(const MorseTree& m) { return validate_tmt(m).first.empty(); }

/// All internal vertices trivalent and at most one contracted edge per vertex.
bool is_general_tmt(const MorseTree& m);

/// Root designator on the coral side: either a negative vertex or a positive
/// (unbounded) edge.
struct TmtRoot {
    bool is_positive_edge = false;
    int id = -1;
    auto operator<=>(const TmtRoot&) const = default;
};

/// The coral type determined by a Morse tree. Negative vertices come from
/// externals on contracted edges; every other external yields a positive end.
CoralType tmt_to_type(const MorseTree& m);

/// As tmt_to_type, also reporting which coral object each external became.
struct TmtTypeMap {
    CoralType type;
    std::map<int, TmtRoot> external_to_coral;  // tree external -> coral designator
};
TmtTypeMap tmt_to_type_mapped(const MorseTree& m);

struct LiftResult {
    TropicalCoral coral;
    TmtRoot root;  // coral-side designator of the tree root
};

/// Lifts a general Morse tree to the coral with the prescribed heights:
/// heights[0] pins the interior vertex next to the anchor negative vertex,
/// the rest pin the interior vertices away from negative vertices, in
/// ascending vertex order. Needs exactly (number of positive ends - 1)
/// heights.
LiftResult lift_tmt(const MorseTree& m, const std::vector<Rat>& heights);

/// The Morse tree of a general coral of good type, rooted at the given
/// designator. Decorations are normalized so that n_0 = 0.
MorseTree coral_to_tmt(const TropicalCoral& c, const TmtRoot& root);

/// Root with minimal phi value; ties broken toward negative vertices, then by id.
TmtRoot canonical_tmt_root(const TropicalCoral& c);

inline MorseTree coral_to_tmt(const TropicalCoral& c) { return coral_to_tmt(c, canonical_tmt_root(c)); }

/// Deterministic relabelling by contour order; equal canonical forms iff the
/// rooted decorated trees are isomorphic.
MorseTree canonical_tmt(const MorseTree& m);

}  // namespace coral
