#pragma once

#include "coral/constraints.hpp"
#include "coral/coral.hpp"
#include "coral/counting.hpp"

#include <map>

namespace coral {

/// Degree class on the cylinder quotient: period b and the representative
/// with the first positive end normalized to slope in [0, b).
struct QuotientDegree {
    Int b;
    Degree representative;
    Int offset;  // shear power applied to reach the representative
};

struct AreaSeries {
    std::map<Int, Rat> coefficients;  // area -> count contribution
    Int truncation;                   // a_max
};

/// Stable intersection number of the extension of c with the line family
/// R*(j*b, 1), j in Z, away from the origin where all the lines meet.
/// Computed twice with independent perturbation directions.
Int tropical_area(const TropicalCoral& c, const Int& b);

/// One perturbation direction only; exposed for the well-definedness checks.
Int tropical_area_with_direction(const TropicalCoral& c, const Int& b, const LatticeVector& dir);

/// Closed form of the area from the degree alone: per line, half the total
/// end multiplicity against the line minus the origin contribution of the
/// negative ends. Agrees with tropical_area on every realized coral and
/// bounds the translate enumeration of count_series.
Int area_from_degree(const Degree& d, const Int& b);

/// Normalizes the first positive end to slope in [0, b) by a shear power.
QuotientDegree normalize_mod_Z(const Degree& d, const Int& b);

/// Degree obtained by shearing the non-fixed ends by the given powers.
Degree translate_degree(const Degree& rep, const Int& b, const std::vector<Int>& pos_shifts,
                        const std::vector<Int>& neg_shifts);

/// Count of corals on the quotient, graded by tropical area up to a_max.
/// Contributions are the same unit-normalized ones as in count().
AreaSeries count_series(const QuotientDegree& qd, const Constraint& lam, const Int& a_max);

}  // namespace coral
