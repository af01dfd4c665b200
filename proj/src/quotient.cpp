#include "coral/quotient.hpp"

#include "coral/moduli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace coral {

namespace {

struct CurveEdge {
    RationalPoint start;
    RationalPoint vec;        // direction vector; segment when bounded, else ray
    bool bounded;             // t in (0,1) for segments, (0,inf) for rays
    LatticeVector prim_dir;
    Int weight;
};

std::vector<CurveEdge> curve_edges(const TropicalCurve& tc) {
    std::vector<CurveEdge> out;
    for (const auto& [e, vw] : tc.bounded_edges) {
        CurveEdge ce;
        ce.start = tc.positions.at(vw.first);
        ce.vec = tc.positions.at(vw.second) - tc.positions.at(vw.first);
        ce.bounded = true;
        Int lc = boost::multiprecision::lcm(denominator(ce.vec(0)), denominator(ce.vec(1)));
        ce.prim_dir = primitive(lvec(numerator(ce.vec(0) * lc), numerator(ce.vec(1) * lc))).first;
        ce.weight = tc.weights.at(e);
        out.push_back(std::move(ce));
    }
    for (const auto& [e, v] : tc.ends) {
        CurveEdge ce;
        ce.start = tc.positions.at(v);
        const LatticeVector& u = tc.end_dirs.at(e);
        ce.vec = rpoint(Rat(u(0)), Rat(u(1)));
        ce.bounded = false;
        ce.prim_dir = u;
        ce.weight = tc.weights.at(e);
        out.push_back(std::move(ce));
    }
    return out;
}

// t(eps) = t0 + t1*eps lexicographically within (0, upper); upper absent for rays.
bool in_open_range(const Rat& t0, const Rat& t1, bool bounded) {
    bool above_zero = t0 > 0 || (t0 == 0 && t1 > 0);
    if (!above_zero) return false;
    if (!bounded) return true;
    return t0 < 1 || (t0 == 1 && t1 < 0);
}

}  // namespace

Int tropical_area_with_direction(const TropicalCoral& c, const Int& b, const LatticeVector& dir) {
    TropicalCurve tc = extend_coral(c);
    Int total = 0;
    for (const CurveEdge& e : curve_edges(tc)) {
        // Edges whose affine span passes through the origin meet the pencil
        // only at the origin, which does not count, or overlap a member line.
        Rat through = e.start(0) * e.vec(1) - e.start(1) * e.vec(0);
        if (through == 0) continue;

        // Slope range of the edge; every crossed line has its slope inside.
        Rat s0 = e.start(0) / e.start(1);
        Rat s1;
        if (e.bounded) {
            RationalPoint q = e.start + e.vec;
            s1 = q(0) / q(1);
        } else {
            s1 = Rat(e.prim_dir(0), e.prim_dir(1));
        }
        Rat lo = std::min(s0, s1), hi = std::max(s0, s1);
        Int j_lo = rat_floor(lo / Rat(b)) - 1, j_hi = rat_floor(hi / Rat(b)) + 1;

        for (Int j = j_lo; j <= j_hi; ++j) {
            LatticeVector v = lvec(j * b, 1);
            RationalPoint vq = rpoint(Rat(v(0)), Rat(v(1)));
            Rat den = det2q(e.vec, vq);
            if (den == 0) continue;  // parallel to the line
            Rat t0 = -(e.start(0) * vq(1) - e.start(1) * vq(0)) / den;
            Rat t1 = -(Rat(dir(0)) * vq(1) - Rat(dir(1)) * vq(0)) / den;
            if (in_open_range(t0, t1, e.bounded)) total += e.weight * abs(det2(e.prim_dir, v));
        }
    }
    return total;
}

Int tropical_area(const TropicalCoral& c, const Int& b) {
    const LatticeVector d1 = lvec(1, 2), d2 = lvec(1, -3);  // never parallel to any (j*b, 1)
    Int a1 = tropical_area_with_direction(c, b, d1);
    Int a2 = tropical_area_with_direction(c, b, d2);
    if (a1 != a2) throw Error(Errc::Internal, "tropical_area: perturbation directions disagree");
    return a1;
}

Int area_from_degree(const Degree& d, const Int& b) {
    std::vector<LatticeVector> all = d.positive;
    all.insert(all.end(), d.negative.begin(), d.negative.end());

    // Boundary of the relevant line range: beyond every entry slope the
    // per-line term vanishes identically (balancing).
    Rat lo, hi;
    bool first = true;
    for (const auto& e : all) {
        Rat s = Rat(e(0)) / Rat(e(1));
        if (first || s < lo) lo = s;
        if (first || s > hi) hi = s;
        first = false;
    }
    Int j_lo = rat_floor(lo / Rat(b)) - 1, j_hi = rat_floor(hi / Rat(b)) + 2;

    Int total = 0;
    for (Int j = j_lo; j <= j_hi; ++j) {
        LatticeVector v = lvec(j * b, 1);
        Int t = 0;
        for (const auto& e : all) t += abs(det2(e, v));
        Int o = 0;
        for (const auto& e : d.negative) o += abs(det2(e, v));
        total += t / 2 - o;
    }
    return total;
}

QuotientDegree normalize_mod_Z(const Degree& d, const Int& b) {
    if (d.positive.empty()) throw Error(Errc::EmptyDegree, "normalize_mod_Z: no positive ends");
    if (b < 1) throw Error(Errc::BadIndex, "normalize_mod_Z: period must be positive");
    const LatticeVector& f = d.positive.front();
    Rat s = Rat(f(0)) / Rat(f(1));
    Int k = -rat_floor(s / Rat(b));
    QuotientDegree out;
    out.b = b;
    out.offset = k;
    for (const auto& e : d.positive) out.representative.positive.push_back(shear(e, k, b));
    for (const auto& e : d.negative) out.representative.negative.push_back(shear(e, k, b));
    return out;
}

Degree translate_degree(const Degree& rep, const Int& b, const std::vector<Int>& pos_shifts,
                        const std::vector<Int>& neg_shifts) {
    if (pos_shifts.size() != rep.positive.size() || neg_shifts.size() != rep.negative.size())
        throw Error(Errc::BadIndex, "translate_degree: shift count mismatch");
    Degree out;
    for (size_t i = 0; i < rep.positive.size(); ++i) out.positive.push_back(shear(rep.positive[i], pos_shifts[i], b));
    for (size_t i = 0; i < rep.negative.size(); ++i) out.negative.push_back(shear(rep.negative[i], neg_shifts[i], b));
    return out;
}

AreaSeries count_series(const QuotientDegree& qd, const Constraint& lam, const Int& a_max) {
    if (a_max < 0) throw Error(Errc::BadIndex, "count_series: a_max must be nonnegative");
    const Degree& rep = qd.representative;
    int l = static_cast<int>(rep.positive.size());
    int m = static_cast<int>(rep.negative.size());
    if (l < 1 || m < 1) throw Error(Errc::EmptyDegree, "count_series: degree needs ends on both sides");

    if (!is_good(lam, rep))
        throw Error(Errc::BadConstraint, "count_series: constraint not good for the representative");
    if (!in_stable_range(lam, rep).stable())
        throw Error(Errc::BadConstraint, "count_series: constraint not stable for the representative");

    AreaSeries series;
    series.truncation = a_max;

    // Spread of the entry slopes in units of b bounds how far a translated
    // end can move before every coral of the translated degree crosses more
    // than a_max pencil lines.
    Rat lo, hi;
    bool first = true;
    auto scan = [&](const LatticeVector& e) {
        Rat s = Rat(e(0)) / Rat(e(1));
        if (first || s < lo) lo = s;
        if (first || s > hi) hi = s;
        first = false;
    };
    for (const auto& e : rep.positive) scan(e);
    for (const auto& e : rep.negative) scan(e);
    Int spread = rat_floor((hi - lo) / Rat(qd.b)) + 1;
    Int cap = a_max + spread + 3;
    long radius = static_cast<long>(cap);

    int free_slots = (l - 1) + m;  // the first positive end stays fixed
    std::vector<Int> shifts(free_slots, Int(0));

    std::function<void(int)> recurse = [&](int slot) {
        if (slot == free_slots) {
            std::vector<Int> kpos(l, Int(0)), jneg(m, Int(0));
            for (int i = 1; i < l; ++i) kpos[i] = shifts[i - 1];
            for (int r = 0; r < m; ++r) jneg[r] = shifts[l - 1 + r];
            // Balance: heights weighted by shifts must cancel.
            Int bal = 0;
            for (int i = 1; i < l; ++i) bal += kpos[i] * rep.positive[i](1);
            for (int r = 0; r < m; ++r) bal += jneg[r] * rep.negative[r](1);
            if (bal != 0) return;

            Degree dt = translate_degree(rep, qd.b, kpos, jneg);
            if (area_from_degree(dt, qd.b) > a_max) return;

            Constraint lt;
            for (size_t i = 0; i < lam.entries.size(); ++i) {
                QuotientClass q;
                q.direction = primitive(dt.positive[i]).first;
                q.value = lam.entries[i].value;  // quotient values are shear-invariant
                lt.entries.push_back(std::move(q));
            }
            for (const CoralType& t : enumerate_types(dt, /*general_only=*/true).types) {
                std::optional<TropicalCoral> c;
                try {
                    c = realize(t, lt);
                } catch (const Error& err) {
                    if (err.code() == Errc::Internal)
                        throw Error(Errc::BadConstraint, "count_series: constraint not generic for a translate");
                    throw;
                }
                if (!c) continue;
                Int area = tropical_area(*c, qd.b);
                if (area > a_max) continue;
                Rat denom = 1;
                for (const auto& [e, v] : t.graph.positive_edges) denom *= Rat(t.graph.weights.at(e));
                for (const auto& [v, cls] : t.graph.vertices) {
                    if (cls != VertexClass::Negative) continue;
                    for (int e : incident_edges(t.graph, v)) denom *= Rat(t.graph.weights.at(e));
                }
                series.coefficients[area] += Rat(mult_coral(*c)) / denom;
            }
            return;
        }
        for (long k = -radius; k <= radius; ++k) {
            shifts[slot] = Int(k);
            recurse(slot + 1);
        }
    };
    recurse(0);
    return series;
}

}  // namespace coral
