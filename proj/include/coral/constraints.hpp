#pragma once

#include "coral/coral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coral {

/// Asymptotic constraint: one quotient class per labelled positive end.
/// Entry i constrains the i-th labelled end; the last positive end of the
/// degree stays unconstrained.
struct Constraint {
    std::vector<QuotientClass> entries;
};

bool operator==(const Constraint& a, const Constraint& b);

/// Scales every value by s (the constraint matched by the rescaled coral).
Constraint scale(const Constraint& lam, const Rat& s);

/// Does the coral match the constraint on its labelled ends?
/// Throws DirectionMismatch when entry directions do not line up with the
/// labelled edges.
bool matches(const TropicalCoral& c, const Constraint& lam);

/// Good constraint: where a constrained direction lies on the boundary of the
/// cone spanned by the positive directions, the class must sit strictly on
/// the interior side.
bool is_good(const Constraint& lam, const Degree& d);

enum class RangeVerdict { EmptyForAllS, RealizedAtOne, RealizedOnlyAfterRescale };

struct TypeRangeReport {
    CoralType type;
    RangeVerdict verdict;
    Rat rescale_inf;      // infimum of feasible s when rescale is needed
    Rat rescale_witness;  // a feasible s
};

struct StableRangeCertificate {
    std::vector<TypeRangeReport> per_type;
    bool stable() const;
    std::string summary() const;
};

/// Exact parametric feasibility in the rescale parameter s >= 1, over every
/// type (degenerate ones included) of the degree.
StableRangeCertificate in_stable_range(const Constraint& lam, const Degree& d);

/// Deterministic sampler: a good constraint for which every type check
/// certifies generality. Throws SamplingFailed when the attempt budget runs
/// out.
Constraint sample_general_good(const Degree& d, std::uint64_t seed);

/// Rescales lam until it certifies stable; identity when already stable.
std::pair<Constraint, StableRangeCertificate> stabilize(const Constraint& lam, const Degree& d);

}  // namespace coral
