#include "coral/constraints.hpp"

#include "coral/moduli.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace coral {

bool operator==(const Constraint& a, const Constraint& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (size_t i = 0; i < a.entries.size(); ++i)
        if (!eq(a.entries[i], b.entries[i])) return false;
    return true;
}

Constraint scale(const Constraint& lam, const Rat& s) {
    Constraint out = lam;
    for (auto& e : out.entries) e.value *= s;
    return out;
}

bool matches(const TropicalCoral& c, const Constraint& lam) {
    const auto& labels = c.ctype.graph.labels;
    if (lam.entries.size() > labels.size())
        throw Error(Errc::DirectionMismatch, "matches: more constraints than labelled ends");
    for (size_t i = 0; i < lam.entries.size(); ++i) {
        int e = labels[i];
        int v = c.ctype.graph.positive_edges.at(e);
        const LatticeVector& u = flag_dir(c.ctype, v, e);
        if (!eq(u, lam.entries[i].direction))
            throw Error(Errc::DirectionMismatch, "matches: direction mismatch on labelled end " + std::to_string(i));
        if (project_mod(u, c.positions.at(v)).value != lam.entries[i].value) return false;
    }
    return true;
}

bool is_good(const Constraint& lam, const Degree& d) {
    if (lam.entries.empty()) return true;
    std::vector<LatticeVector> dirs;
    for (const auto& v : d.positive) dirs.push_back(primitive(v).first);

    // Extremal rays of the cone spanned by the positive directions. All of
    // them live in the open upper half-plane, so the angular order is total.
    LatticeVector dmin = dirs[0], dmax = dirs[0];
    for (const auto& u : dirs) {
        if (angular_less(u, dmin)) dmin = u;
        if (angular_less(dmax, u)) dmax = u;
    }
    if (eq(dmin, dmax)) return false;  // cone degenerates to a ray: no interior classes

    for (const auto& entry : lam.entries) {
        const LatticeVector& u = entry.direction;
        bool boundary = eq(u, dmin) || eq(u, dmax);
        if (!boundary) continue;
        const LatticeVector& w = eq(u, dmin) ? dmax : dmin;
        Int side = det2(u, w);  // sign of <rot90(u), w>
        if (side > 0 && !(entry.value > 0)) return false;
        if (side < 0 && !(entry.value < 0)) return false;
    }
    return true;
}

bool StableRangeCertificate::stable() const {
    for (const auto& r : per_type)
        if (r.verdict == RangeVerdict::RealizedOnlyAfterRescale) return false;
    return true;
}

std::string StableRangeCertificate::summary() const {
    std::ostringstream os;
    int empty = 0, at_one = 0, rescale = 0;
    for (const auto& r : per_type) {
        switch (r.verdict) {
            case RangeVerdict::EmptyForAllS: ++empty; break;
            case RangeVerdict::RealizedAtOne: ++at_one; break;
            case RangeVerdict::RealizedOnlyAfterRescale: ++rescale; break;
        }
    }
    os << per_type.size() << " types: " << at_one << " realized at s=1, " << empty
       << " empty for all s, " << rescale << " need rescaling";
    if (rescale > 0) {
        os << " (infima:";
        for (const auto& r : per_type)
            if (r.verdict == RangeVerdict::RealizedOnlyAfterRescale) os << " " << format_rational(r.rescale_inf);
        os << ")";
    }
    return os.str();
}

StableRangeCertificate in_stable_range(const Constraint& lam, const Degree& d) {
    StableRangeCertificate cert;
    TypeCatalog cat = enumerate_types(d, /*general_only=*/false);
    for (const CoralType& t : cat.types) {
        SInterval iv = type_feasibility_interval(t, lam);
        TypeRangeReport r;
        r.type = t;
        if (iv.empty) {
            r.verdict = RangeVerdict::EmptyForAllS;
        } else if (iv.contains(1)) {
            r.verdict = RangeVerdict::RealizedAtOne;
        } else {
            r.verdict = RangeVerdict::RealizedOnlyAfterRescale;
            r.rescale_inf = iv.lo;
            r.rescale_witness = *iv.witness();
        }
        cert.per_type.push_back(std::move(r));
    }
    return cert;
}

namespace {

Rat random_rational(std::mt19937_64& rng, int max_num, int max_den) {
    std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
    return Rat(Int(num(rng)), Int(den(rng)));
}

// Required sign of a good class value for a boundary direction, 0 when free.
int required_sign(const LatticeVector& u, const Degree& d) {
    std::vector<LatticeVector> dirs;
    for (const auto& v : d.positive) dirs.push_back(primitive(v).first);
    LatticeVector dmin = dirs[0], dmax = dirs[0];
    for (const auto& w : dirs) {
        if (angular_less(w, dmin)) dmin = w;
        if (angular_less(dmax, w)) dmax = w;
    }
    if (eq(dmin, dmax)) return 0;
    if (!eq(u, dmin) && !eq(u, dmax)) return 0;
    Int side = det2(u, eq(u, dmin) ? dmax : dmin);
    return side > 0 ? 1 : -1;
}

}  // namespace

Constraint sample_general_good(const Degree& d, std::uint64_t seed) {
    int l = static_cast<int>(d.positive.size());
    if (l < 1) throw Error(Errc::EmptyDegree, "sample_general_good: degree has no positive ends");
    int k = l - 1;

    TypeCatalog cat = enumerate_types(d, /*general_only=*/false);

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
        Constraint lam;
        for (int i = 0; i < k; ++i) {
            QuotientClass q;
            q.direction = primitive(d.positive[i]).first;
            int sgn = required_sign(q.direction, d);
            if (sgn == 0) {
                std::uniform_int_distribution<int> coin(0, 1);
                sgn = coin(rng) ? 1 : -1;
            }
            q.value = random_rational(rng, 60, 6) * sgn;
            lam.entries.push_back(std::move(q));
        }
        if (!is_good(lam, d)) continue;

        // Constructive generality: no degenerate type may admit a matching
        // coral, and every general type must give a square solvable system.
        bool ok = true;
        for (const CoralType& t : cat.types) {
            if (is_general(t)) {
                try {
                    (void)realize(t, lam);
                } catch (const Error& err) {
                    if (err.code() == Errc::Internal) {
                        ok = false;  // underdetermined: not general, resample
                        break;
                    }
                    throw;
                }
            } else {
                SInterval iv = type_feasibility_interval(t, lam);
                if (iv.contains(1)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return lam;
    }
    throw Error(Errc::SamplingFailed, "sample_general_good: attempt budget exhausted");
}

std::pair<Constraint, StableRangeCertificate> stabilize(const Constraint& lam, const Degree& d) {
    Constraint cur = lam;
    for (int round = 0; round < 6; ++round) {
        StableRangeCertificate cert = in_stable_range(cur, d);
        if (cert.stable()) return {cur, cert};
        Rat worst = 1;
        for (const auto& r : cert.per_type)
            if (r.verdict == RangeVerdict::RealizedOnlyAfterRescale && r.rescale_inf > worst)
                worst = r.rescale_inf;
        // Scale past every infimum; feasibility regions are upward closed.
        cur = scale(cur, Rat(rat_floor(worst) + 1));
    }
    throw Error(Errc::BadConstraint, "stabilize: no stable rescaling found");
}

}  // namespace coral
