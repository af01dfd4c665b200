#pragma once

#include "coral/constraints.hpp"
#include "coral/coral.hpp"
#include "coral/coralgraph.hpp"

#include <vector>

namespace coral {

/// Plane tropical curve arising as the extension of a coral: negative edges
/// prolonged to rays through the origin.
struct TropicalCurve {
    std::map<int, std::pair<int, int>> bounded_edges;  // id -> {v, w}
    std::map<int, int> ends;                           // id -> base vertex
    std::map<int, LatticeVector> end_dirs;             // primitive directions
    std::map<int, EndKind> end_kind;
    std::map<int, Int> weights;                        // w~ on every edge
    std::map<int, RationalPoint> positions;            // vertex -> point
    std::vector<int> labels;                           // ordered positive end ids
};

std::vector<std::string> validate_curve(const TropicalCurve& tc);

/// Mikhalkin vertex multiplicity w1*w2*|det(u1,u2)| from any two of the three
/// weighted directions at a balanced trivalent vertex.
Int mult_from_pair(const LatticeVector& u1, const Int& w1, const LatticeVector& u2, const Int& w2);

/// Multiplicity at an interior vertex of a coral. Throws NotTrivalent.
Int mult_vertex(const TropicalCoral& c, int vertex);

/// Product of the interior vertex multiplicities. Throws NonGeneralCoral.
Int mult_coral(const TropicalCoral& c);

struct TypeContribution {
    CoralType type;
    Rat contribution;
    bool realized = false;
};

struct CountResult {
    Rat total;
    std::vector<TypeContribution> per_type;
};

/// The tropical count: sum over general types realized against lam of
/// Mult / (prod of unbounded-edge weights) / (prod of weights of edges at
/// negative vertices). Requires lam good, general and stable; otherwise
/// throws BadConstraint carrying the certificate summary.
CountResult count(const Degree& d, const Constraint& lam);

/// Extension to a plane tropical curve.
TropicalCurve extend_coral(const TropicalCoral& c);

/// Inverse of extend_coral up to the minimal rescaling that lifts every
/// vertex strictly above height 1. The result matches scale(lam, s) where s
/// is the applied rescaling (1 when no rescale was needed).
struct RestrictResult {
    TropicalCoral coral;
    Rat applied_scale;
};

RestrictResult restrict_curve(const TropicalCurve& tc, const Degree& d, const Constraint& lam);

}  // namespace coral
