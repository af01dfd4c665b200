#pragma once

#include "coral/coralgraph.hpp"
#include "coral/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace coral {

struct Flag {
    int vertex;
    int edge;
    auto operator<=>(const Flag&) const = default;
};

/// Type (Gamma, u): the graph with a primitive direction on every flag and a
/// primitive direction plus weight on every negative vertex.
struct CoralType {
    CoralGraph graph;
    std::map<Flag, LatticeVector> flag_dirs;
    std::map<int, LatticeVector> negvert_dirs;
    std::map<int, Int> negvert_weights;
};

bool operator==(const CoralType& a, const CoralType& b);

/// A tropical coral: a type together with rational vertex positions on the
/// truncated cone (height >= 1, negative vertices on the boundary).
struct TropicalCoral {
    CoralType ctype;
    std::map<int, RationalPoint> positions;
};

bool operator==(const TropicalCoral& a, const TropicalCoral& b);

/// Degree: weighted directions of positive ends (ordered, matching the
/// labelling) and of negative vertices. Entries are w*u, not primitive.
struct Degree {
    std::vector<LatticeVector> positive;  // heights > 0
    std::vector<LatticeVector> negative;  // heights < 0
};

bool operator==(const Degree& a, const Degree& b);

/// Multiset equality of degrees (label order ignored).
bool same_degree(const Degree& a, const Degree& b);

/// Height-1 point of the ray through the origin with direction -u, for a
/// negative-vertex direction u (height < 0). This is the forced position.
RationalPoint forced_negative_position(const LatticeVector& u);

/// Flag direction of edge `e` at vertex `v` as stored in the type.
const LatticeVector& flag_dir(const CoralType& t, int v, int e);

std::vector<std::string> validate_coral(const TropicalCoral& c);
inline bool is_valid_coral(const TropicalCoral& c) { return validate_coral(c).empty(); }

/// Re-derives the type from the geometry (bounded-edge directions and
/// negative-vertex data from positions, positive flags from the stored type).
CoralType type_of(const TropicalCoral& c);

Degree degree_of(const CoralType& t);

/// All interior vertices trivalent and all negative vertices univalent.
bool is_general(const CoralType& t);
bool is_general(const TropicalCoral& c);

/// Rescales by s >= 1. Negative vertices stay at their forced height-1
/// positions; the type is unchanged.
TropicalCoral rescale(const TropicalCoral& c, const Rat& s);

/// Deterministic relabelling; two corals are isomorphic as labelled corals
/// iff their canonical forms are identical.
TropicalCoral canonical_form(const TropicalCoral& c);

/// Canonical form of a bare type (positions ignored).
CoralType canonical_type(const CoralType& t);

/// Stable total order key for types; equal keys iff isomorphic labelled types.
std::string type_signature(const CoralType& t);

}  // namespace coral
