#pragma once

#include "coral/affine.hpp"
#include "coral/constraints.hpp"
#include "coral/coral.hpp"

#include <optional>
#include <vector>

namespace coral {

struct TypeCatalog {
    Degree degree;
    std::vector<CoralType> types;  // canonical forms, deduplicated, signature-sorted
};

/// All types of the degree: trivalent trees on the labelled ends with
/// directions propagated by balancing. With general_only = false the
/// catalog also carries the degenerate types obtained by contracting
/// bounded edges.
TypeCatalog enumerate_types(const Degree& d, bool general_only);

/// The unique coral of a general type matching a general constraint, if the
/// solved edge lengths are positive and interior heights exceed 1.
/// Returns the canonical form. Throws NonGeneralType for non-general types
/// and Internal when the system is underdetermined (the constraint was not
/// general after all).
std::optional<TropicalCoral> realize(const CoralType& t, const Constraint& lam);

struct RealizeDiagnostics {
    int unknowns = 0;              // bounded edges
    int anchor_rows = 0;           // 2*(m-1)
    int anchor_rank = 0;
    int pre_constraint_nullity = 0;  // solution-space dimension before constraints
    bool solved = false;
};

/// Same as realize but also reports the rank bookkeeping used by the
/// dimension sanity check.
std::optional<TropicalCoral> realize_with_diagnostics(const CoralType& t, const Constraint& lam,
                                                      RealizeDiagnostics& diag);

/// Feasibility of a (possibly degenerate) type against lam with an extra
/// rescale unknown s; the interval of feasible s >= 1.
SInterval type_feasibility_interval(const CoralType& t, const Constraint& lam);

/// Quotient classes of the indexed labelled ends (1-based indices).
std::vector<QuotientClass> evaluation(const TropicalCoral& c, const std::vector<int>& indices);

}  // namespace coral
