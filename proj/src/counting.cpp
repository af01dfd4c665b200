#include "coral/counting.hpp"

#include "coral/moduli.hpp"

#include <algorithm>

namespace coral {

namespace {

std::vector<std::pair<LatticeVector, Int>> weighted_flags_at(const TropicalCoral& c, int v) {
    std::vector<std::pair<LatticeVector, Int>> out;
    for (int e : incident_edges(c.ctype.graph, v))
        out.push_back({flag_dir(c.ctype, v, e), c.ctype.graph.weights.at(e)});
    return out;
}

}  // namespace

std::vector<std::string> validate_curve(const TropicalCurve& tc) {
    std::vector<std::string> report;
    auto bad = [&](const std::string& m) { report.push_back(m); };

    std::map<int, std::vector<std::pair<LatticeVector, Int>>> star;
    for (const auto& [e, vw] : tc.bounded_edges) {
        if (!tc.positions.count(vw.first) || !tc.positions.count(vw.second)) {
            bad("bounded edge " + std::to_string(e) + " has unknown endpoint");
            continue;
        }
        RationalPoint d = tc.positions.at(vw.second) - tc.positions.at(vw.first);
        if (d(0) == 0 && d(1) == 0) {
            bad("bounded edge " + std::to_string(e) + " has zero length");
            continue;
        }
        Int lc = boost::multiprecision::lcm(denominator(d(0)), denominator(d(1)));
        auto [u, g] = primitive(lvec(numerator(d(0) * lc), numerator(d(1) * lc)));
        star[vw.first].push_back({u, tc.weights.at(e)});
        star[vw.second].push_back({LatticeVector(-u), tc.weights.at(e)});
    }
    for (const auto& [e, v] : tc.ends) {
        if (!tc.positions.count(v)) {
            bad("end " + std::to_string(e) + " has unknown base vertex");
            continue;
        }
        star[v].push_back({tc.end_dirs.at(e), tc.weights.at(e)});
    }
    for (const auto& [v, flags] : star) {
        LatticeVector sum = lvec(0, 0);
        for (const auto& [u, w] : flags) sum += LatticeVector(u * w);
        if (!is_zero(sum)) bad("balancing fails at curve vertex " + std::to_string(v));
    }
    // Tree condition.
    if (tc.bounded_edges.size() + 1 != tc.positions.size()) bad("Betti number nonzero");
    return report;
}

Int mult_from_pair(const LatticeVector& u1, const Int& w1, const LatticeVector& u2, const Int& w2) {
    return w1 * w2 * abs(det2(u1, u2));
}

Int mult_vertex(const TropicalCoral& c, int vertex) {
    if (!c.ctype.graph.vertices.count(vertex) ||
        c.ctype.graph.vertices.at(vertex) != VertexClass::Interior ||
        valency(c.ctype.graph, vertex) != 3)
        throw Error(Errc::NotTrivalent, "mult_vertex: not an interior trivalent vertex");
    auto flags = weighted_flags_at(c, vertex);
    return mult_from_pair(flags[0].first, flags[0].second, flags[1].first, flags[1].second);
}

Int mult_coral(const TropicalCoral& c) {
    if (!is_general(c) || !is_valid_coral(c))
        throw Error(Errc::NonGeneralCoral, "mult_coral: coral must be valid and general");
    Int prod = 1;
    for (const auto& [v, cls] : c.ctype.graph.vertices)
        if (cls == VertexClass::Interior) prod *= mult_vertex(c, v);
    return prod;
}

CountResult count(const Degree& d, const Constraint& lam) {
    if (!is_good(lam, d))
        throw Error(Errc::BadConstraint, "count: constraint is not good for the degree");
    StableRangeCertificate cert = in_stable_range(lam, d);
    if (!cert.stable())
        throw Error(Errc::BadConstraint, "count: constraint is not in the stable range (" + cert.summary() + ")");

    CountResult res;
    res.total = 0;
    for (const CoralType& t : enumerate_types(d, /*general_only=*/true).types) {
        TypeContribution tc;
        tc.type = t;
        tc.contribution = 0;
        auto c = realize(t, lam);
        if (c) {
            Rat denom = 1;
            for (const auto& [e, v] : t.graph.positive_edges) denom *= Rat(t.graph.weights.at(e));
            for (const auto& [v, cls] : t.graph.vertices) {
                if (cls != VertexClass::Negative) continue;
                for (int e : incident_edges(t.graph, v)) denom *= Rat(t.graph.weights.at(e));
            }
            tc.realized = true;
            tc.contribution = Rat(mult_coral(*c)) / denom;
            res.total += tc.contribution;
        }
        res.per_type.push_back(std::move(tc));
    }
    return res;
}

TropicalCurve extend_coral(const TropicalCoral& c) {
    auto report = validate_coral(c);
    if (!report.empty()) throw Error(Errc::InvalidCoral, "extend_coral: " + report.front());

    ExtendedGraph xg = extend_graph(c.ctype.graph, &c.ctype.negvert_weights);
    TropicalCurve tc;
    tc.bounded_edges = xg.bounded_edges;
    tc.ends = xg.ends;
    tc.end_kind = xg.end_kind;
    tc.weights = xg.weights;
    tc.labels = xg.labels;
    for (const auto& [v, cls] : xg.vertices) tc.positions[v] = c.positions.at(v);

    for (const auto& [e, v] : xg.ends) {
        switch (xg.end_kind.at(e)) {
            case EndKind::Positive:
                tc.end_dirs[e] = flag_dir(c.ctype, c.ctype.graph.positive_edges.at(e), e);
                break;
            case EndKind::NegativeFromUnivalent: {
                // The old bounded edge, prolonged through the origin: its
                // direction from the surviving endpoint is u_v of the removed
                // negative vertex.
                auto [a, b] = c.ctype.graph.bounded_edges.at(e);
                int removed = xg.vertices.count(a) ? b : a;
                tc.end_dirs[e] = c.ctype.negvert_dirs.at(removed);
                break;
            }
            case EndKind::NegativeInserted:
                tc.end_dirs[e] = c.ctype.negvert_dirs.at(v);
                break;
        }
    }
    return tc;
}

RestrictResult restrict_curve(const TropicalCurve& tc, const Degree& d, const Constraint& lam) {
    auto report = validate_curve(tc);
    if (!report.empty()) throw Error(Errc::InvalidCoral, "restrict_curve: " + report.front());
    if (!is_good(lam, d)) throw Error(Errc::BadConstraint, "restrict_curve: constraint is not good");

    // Degree check: positive ends in label order, negative ends as multiset.
    std::vector<LatticeVector> pos_entries, neg_entries;
    for (int e : tc.labels) pos_entries.push_back(tc.end_dirs.at(e) * tc.weights.at(e));
    for (const auto& [e, v] : tc.ends)
        if (tc.end_kind.at(e) != EndKind::Positive) neg_entries.push_back(tc.end_dirs.at(e) * tc.weights.at(e));
    {
        Degree got{pos_entries, neg_entries};
        if (!same_degree(got, d) || pos_entries.size() != d.positive.size())
            throw Error(Errc::DirectionMismatch, "restrict_curve: curve degree differs from d");
        for (size_t i = 0; i < pos_entries.size(); ++i)
            if (!eq(pos_entries[i], d.positive[i]))
                throw Error(Errc::DirectionMismatch, "restrict_curve: labelled ends out of order");
    }

    // Matching (lambda, 0, ..., 0): labelled positive ends hit their classes,
    // negative ends pass through the origin.
    for (size_t i = 0; i < lam.entries.size(); ++i) {
        int e = tc.labels[i];
        const LatticeVector& u = tc.end_dirs.at(e);
        if (!eq(u, lam.entries[i].direction))
            throw Error(Errc::DirectionMismatch, "restrict_curve: constraint direction mismatch");
        if (project_mod(u, tc.positions.at(tc.ends.at(e))).value != lam.entries[i].value)
            throw Error(Errc::BadConstraint, "restrict_curve: curve does not match the constraint");
    }
    for (const auto& [e, v] : tc.ends) {
        if (tc.end_kind.at(e) == EndKind::Positive) continue;
        if (project_mod(tc.end_dirs.at(e), tc.positions.at(v)).value != 0)
            throw Error(Errc::BadConstraint, "restrict_curve: negative end does not pass through the origin");
    }

    // Vertices must lie in the cone over the positive directions.
    {
        std::vector<LatticeVector> dirs;
        for (const auto& v : d.positive) dirs.push_back(primitive(v).first);
        LatticeVector dmin = dirs[0], dmax = dirs[0];
        for (const auto& u : dirs) {
            if (angular_less(u, dmin)) dmin = u;
            if (angular_less(dmax, u)) dmax = u;
        }
        for (const auto& [v, p] : tc.positions) {
            if (!(p(1) > 0)) throw Error(Errc::NotGoodPosition, "restrict_curve: vertex at non-positive height");
            Rat a = Rat(dmin(0)) * p(1) - Rat(dmin(1)) * p(0);  // det(dmin, p)
            Rat b = Rat(dmax(0)) * p(1) - Rat(dmax(1)) * p(0);  // det(dmax, p)
            bool inside = eq(dmin, dmax) ? a == 0 : (a >= 0 && b <= 0);
            if (!inside) throw Error(Errc::NotGoodPosition, "restrict_curve: vertex outside the positive cone");
        }
    }

    // Minimal rescale keeping every curve vertex strictly above height 1:
    // identity when possible, else the smallest positive integer.
    Rat min_h = tc.positions.begin()->second(1);
    for (const auto& [v, p] : tc.positions) min_h = std::min(min_h, p(1));
    Rat s = 1;
    if (!(min_h > 1)) s = Rat(rat_floor(1 / min_h) + 1);

    TropicalCoral out;
    int next_vertex = 0;
    for (const auto& [v, p] : tc.positions) next_vertex = std::max(next_vertex, v + 1);

    for (const auto& [v, p] : tc.positions) {
        out.ctype.graph.vertices[v] = VertexClass::Interior;
        out.positions[v] = rpoint(p(0) * s, p(1) * s);
    }
    for (const auto& [e, vw] : tc.bounded_edges) {
        out.ctype.graph.bounded_edges[e] = vw;
        out.ctype.graph.weights[e] = tc.weights.at(e);
        RationalPoint diff = tc.positions.at(vw.second) - tc.positions.at(vw.first);
        Int lc = boost::multiprecision::lcm(denominator(diff(0)), denominator(diff(1)));
        LatticeVector u = primitive(lvec(numerator(diff(0) * lc), numerator(diff(1) * lc))).first;
        out.ctype.flag_dirs[Flag{vw.first, e}] = u;
        out.ctype.flag_dirs[Flag{vw.second, e}] = -u;
    }
    for (const auto& [e, v] : tc.ends) {
        if (tc.end_kind.at(e) == EndKind::Positive) {
            out.ctype.graph.positive_edges[e] = v;
            out.ctype.graph.weights[e] = tc.weights.at(e);
            out.ctype.flag_dirs[Flag{v, e}] = tc.end_dirs.at(e);
        } else {
            // Truncate at height 1: a univalent negative vertex on the ray.
            const LatticeVector& u = tc.end_dirs.at(e);
            int nv = next_vertex++;
            out.ctype.graph.vertices[nv] = VertexClass::Negative;
            out.positions[nv] = forced_negative_position(u);
            out.ctype.graph.bounded_edges[e] = {v, nv};
            out.ctype.graph.weights[e] = tc.weights.at(e);
            out.ctype.flag_dirs[Flag{v, e}] = u;
            out.ctype.flag_dirs[Flag{nv, e}] = -u;
            out.ctype.negvert_dirs[nv] = u;
            out.ctype.negvert_weights[nv] = tc.weights.at(e);
        }
    }
    out.ctype.graph.labels = tc.labels;

    auto rep = validate_coral(out);
    if (!rep.empty()) throw Error(Errc::InvalidCoral, "restrict_curve: result invalid: " + rep.front());
    return RestrictResult{canonical_form(out), s};
}

}  // namespace coral
