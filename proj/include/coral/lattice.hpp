#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace coral {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// A point of the lattice N = Z^2. Second coordinate is the height pr2.
using LatticeVector = Eigen::Matrix<Int, 2, 1>;

/// A point of N_Q = N (x) Q.
using RationalPoint = Eigen::Matrix<Rat, 2, 1>;

using MatrixXq = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

enum class Errc {
    ZeroVector,
    NotPrimitive,
    InvalidGraph,
    InvalidCoral,
    BadScale,
    DirectionMismatch,
    SamplingFailed,
    EmptyDegree,
    NonGeneralType,
    NotTrivalent,
    NonGeneralCoral,
    BadConstraint,
    BadIndex,
    InvalidTMT,
    HeightsInfeasible,
    NotGoodType,
    NotGoodPosition,
    ParseError,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

const char* errc_name(Errc c);

inline LatticeVector lvec(Int a, Int b) {
    LatticeVector v;
    v << std::move(a), std::move(b);
    return v;
}

inline RationalPoint rpoint(Rat x, Rat h) {
    RationalPoint p;
    p << std::move(x), std::move(h);
    return p;
}

inline bool eq(const LatticeVector& u, const LatticeVector& v) { return u(0) == v(0) && u(1) == v(1); }
inline bool eq(const RationalPoint& p, const RationalPoint& q) { return p(0) == q(0) && p(1) == q(1); }
inline bool is_zero(const LatticeVector& v) { return v(0) == 0 && v(1) == 0; }

inline bool lex_less(const LatticeVector& u, const LatticeVector& v) {
    if (u(0) != v(0)) return u(0) < v(0);
    return u(1) < v(1);
}

/// det(u v) = u0*v1 - u1*v0.
inline Int det2(const LatticeVector& u, const LatticeVector& v) { return u(0) * v(1) - u(1) * v(0); }

inline Rat det2q(const RationalPoint& u, const RationalPoint& v) { return u(0) * v(1) - u(1) * v(0); }

/// Rotation by +90 degrees: (a,b) -> (-b,a). Pairs the quotient N_R/Ru with a scalar.
inline LatticeVector rot90(const LatticeVector& v) { return lvec(-v(1), v(0)); }

/// Splits v != 0 as g*p with p primitive and g = gcd(|a|,|b|) > 0.
std::pair<LatticeVector, Int> primitive(const LatticeVector& v);

bool is_primitive(const LatticeVector& v);

/// The class of a point in N_R / R*direction, encoded as <rot90(direction), x>.
struct QuotientClass {
    LatticeVector direction;  // primitive
    Rat value;
};

inline bool eq(const QuotientClass& a, const QuotientClass& b) {
    return eq(a.direction, b.direction) && a.value == b.value;
}

/// Image of x under N_R -> N_R / R*u for primitive u.
QuotientClass project_mod(const LatticeVector& u, const RationalPoint& x);

/// Shear fixing height, translating by k*b at height 1: (x,h) -> (x + k*b*h, h).
/// This is the integral affine Z-action on the cone over R with period b.
LatticeVector shear(const LatticeVector& v, const Int& k, const Int& b);
RationalPoint shear(const RationalPoint& p, const Int& k, const Int& b);

/// Exact counterclockwise angular order on nonzero vectors, starting at (1,0).
/// Returns true when u comes strictly before v.
bool angular_less(const LatticeVector& u, const LatticeVector& v);

/// floor(p) for a rational.
Int rat_floor(const Rat& r);

/// Serialization of rationals as "p/q" in lowest terms, or "p" when q = 1.
std::string format_rational(const Rat& r);
Rat parse_rational(const std::string& s);

std::string format_int(const Int& n);
Int parse_int(const std::string& s);

}  // namespace coral
