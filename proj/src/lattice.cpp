#include "coral/lattice.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace coral {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ZeroVector: return "ZeroVector";
        case Errc::NotPrimitive: return "NotPrimitive";
        case Errc::InvalidGraph: return "InvalidGraph";
        case Errc::InvalidCoral: return "InvalidCoral";
        case Errc::BadScale: return "BadScale";
        case Errc::DirectionMismatch: return "DirectionMismatch";
        case Errc::SamplingFailed: return "SamplingFailed";
        case Errc::EmptyDegree: return "EmptyDegree";
        case Errc::NonGeneralType: return "NonGeneralType";
        case Errc::NotTrivalent: return "NotTrivalent";
        case Errc::NonGeneralCoral: return "NonGeneralCoral";
        case Errc::BadConstraint: return "BadConstraint";
        case Errc::BadIndex: return "BadIndex";
        case Errc::InvalidTMT: return "InvalidTMT";
        case Errc::HeightsInfeasible: return "HeightsInfeasible";
        case Errc::NotGoodType: return "NotGoodType";
        case Errc::NotGoodPosition: return "NotGoodPosition";
        case Errc::ParseError: return "ParseError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

std::pair<LatticeVector, Int> primitive(const LatticeVector& v) {
    if (is_zero(v)) throw Error(Errc::ZeroVector, "primitive: zero vector");
    Int g = boost::multiprecision::gcd(abs(v(0)), abs(v(1)));
    return {lvec(v(0) / g, v(1) / g), g};
}

bool is_primitive(const LatticeVector& v) {
    if (is_zero(v)) return false;
    return boost::multiprecision::gcd(abs(v(0)), abs(v(1))) == 1;
}

QuotientClass project_mod(const LatticeVector& u, const RationalPoint& x) {
    if (!is_primitive(u)) throw Error(Errc::NotPrimitive, "project_mod: direction must be primitive");
    LatticeVector n = rot90(u);
    return QuotientClass{u, Rat(n(0)) * x(0) + Rat(n(1)) * x(1)};
}

LatticeVector shear(const LatticeVector& v, const Int& k, const Int& b) {
    return lvec(v(0) + k * b * v(1), v(1));
}

RationalPoint shear(const RationalPoint& p, const Int& k, const Int& b) {
    return rpoint(p(0) + Rat(k * b) * p(1), p(1));
}

namespace {
// Half-plane index for the angular order: 0 on [0,pi), 1 on [pi,2pi).
int half_plane(const LatticeVector& v) {
    if (v(1) > 0 || (v(1) == 0 && v(0) > 0)) return 0;
    return 1;
}
}  // namespace

bool angular_less(const LatticeVector& u, const LatticeVector& v) {
    if (is_zero(u) || is_zero(v)) throw Error(Errc::ZeroVector, "angular_less: zero vector");
    int hu = half_plane(u), hv = half_plane(v);
    if (hu != hv) return hu < hv;
    Int d = det2(u, v);
    if (d != 0) return d > 0;
    return false;  // parallel within a half-plane: equal angle
}

Int rat_floor(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

std::string format_rational(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_rational(const std::string& s) {
    auto pos = s.find('/');
    try {
        if (pos == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, pos));
        Int den(s.substr(pos + 1));
        if (den == 0) throw Error(Errc::ParseError, "parse_rational: zero denominator in '" + s + "'");
        return Rat(num, den);  // canonicalizes
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "parse_rational: malformed rational '" + s + "'");
    }
}

std::string format_int(const Int& n) { return n.str(); }

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "parse_int: malformed integer '" + s + "'");
    }
}

}  // namespace coral
