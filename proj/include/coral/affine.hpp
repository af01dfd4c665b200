#pragma once

#include "coral/coral.hpp"

#include <optional>
#include <vector>

namespace coral {

/// Vertex positions of a coral of fixed type as affine functions of the
/// bounded-edge lengths: pos(v) = base(v) + coeff(v) * x, where x_e is the
/// (positive) lattice length of edge e. The anchor is the negative vertex
/// with the smallest id; its position is the forced one.
struct AffinePositions {
    int n = 0;                       // number of unknowns (bounded edges)
    std::vector<int> edge_order;     // unknown index -> edge id
    std::map<int, int> edge_index;   // edge id -> unknown index
    std::map<int, RationalPoint> base;
    std::map<int, MatrixXq> coeff;   // 2 x n each
    int anchor = -1;
};

AffinePositions affine_positions(const CoralType& t);

/// One affine condition  coeffs . y + constant  (rel)  0  on variables y.
struct AffineRow {
    VectorXq coeffs;
    Rat constant;
    bool strict = false;  // > vs >=; ignored for equations
};

/// Feasibility of {E y = 0 rows, I y (rel) 0 rows} after eliminating all
/// variables except the last one (s), by exact Gauss + Fourier-Motzkin.
/// The returned rows constrain s alone: coeffs has size 1.
struct SProjection {
    bool inconsistent = false;           // an equation reduced to nonzero constant
    std::vector<AffineRow> equations;    // remaining equations in s
    std::vector<AffineRow> inequalities; // remaining inequalities in s
};

SProjection project_to_last(std::vector<AffineRow> equations, std::vector<AffineRow> inequalities, int n_vars);

/// Solution set of the projected system intersected with s >= 1.
struct SInterval {
    bool empty = true;
    Rat lo;               // infimum (>= 1 when nonempty)
    bool lo_strict = false;
    bool unbounded = true;
    Rat hi;               // only when !unbounded
    bool hi_strict = false;

    bool contains(const Rat& s) const;
    /// Some rational in the set, if any.
    std::optional<Rat> witness() const;
};

SInterval solve_interval(const SProjection& proj);

}  // namespace coral
