#include "coral/affine.hpp"

#include <algorithm>
#include <deque>

namespace coral {

AffinePositions affine_positions(const CoralType& t) {
    const CoralGraph& g = t.graph;
    AffinePositions ap;
    for (const auto& [e, vw] : g.bounded_edges) {
        ap.edge_index[e] = ap.n;
        ap.edge_order.push_back(e);
        ++ap.n;
    }

    for (const auto& [v, cls] : g.vertices) {
        if (cls == VertexClass::Negative) {
            ap.anchor = v;
            break;
        }
    }
    if (ap.anchor < 0) throw Error(Errc::InvalidGraph, "affine_positions: no negative vertex");

    std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (edge, other)
    for (const auto& [e, vw] : g.bounded_edges) {
        adj[vw.first].push_back({e, vw.second});
        adj[vw.second].push_back({e, vw.first});
    }

    ap.base[ap.anchor] = forced_negative_position(t.negvert_dirs.at(ap.anchor));
    ap.coeff[ap.anchor] = MatrixXq::Zero(2, ap.n);

    std::deque<int> queue{ap.anchor};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& [e, w] : adj[v]) {
            if (ap.base.count(w)) continue;
            const LatticeVector& u = flag_dir(t, v, e);  // pos(w) = pos(v) + x_e * u
            ap.base[w] = ap.base[v];
            MatrixXq c = ap.coeff[v];
            c(0, ap.edge_index[e]) += Rat(u(0));
            c(1, ap.edge_index[e]) += Rat(u(1));
            ap.coeff[w] = std::move(c);
            queue.push_back(w);
        }
    }
    if (ap.base.size() != g.vertices.size())
        throw Error(Errc::InvalidGraph, "affine_positions: graph not connected");
    return ap;
}

bool SInterval::contains(const Rat& s) const {
    if (empty) return false;
    if (lo_strict ? !(s > lo) : !(s >= lo)) return false;
    if (!unbounded && (hi_strict ? !(s < hi) : !(s <= hi))) return false;
    return true;
}

std::optional<Rat> SInterval::witness() const {
    if (empty) return std::nullopt;
    if (unbounded) return lo_strict ? Rat(lo + 1) : lo;
    if (!lo_strict) return lo;
    if (!hi_strict) return hi;
    return Rat(lo + hi) / 2;
}

namespace {

// Substitutes variable j := expr (an affine row over the same variable space
// with coeffs(j) == 0) into a row.
void substitute(AffineRow& row, int j, const AffineRow& expr) {
    Rat c = row.coeffs(j);
    if (c == 0) return;
    row.coeffs(j) = 0;
    row.coeffs += c * expr.coeffs;
    row.constant += c * expr.constant;
}

}  // namespace

SProjection project_to_last(std::vector<AffineRow> equations, std::vector<AffineRow> inequalities, int n_vars) {
    SProjection out;
    int s_index = n_vars - 1;

    // Gaussian elimination of variables 0..s_index-1 using the equations.
    for (int col = 0; col < s_index; ++col) {
        int pivot = -1;
        for (size_t r = 0; r < equations.size(); ++r) {
            if (equations[r].coeffs(col) != 0) {
                pivot = static_cast<int>(r);
                break;
            }
        }
        if (pivot < 0) continue;
        AffineRow expr = equations[pivot];
        // col = -(rest)/coeff
        Rat c = expr.coeffs(col);
        expr.coeffs(col) = 0;
        expr.coeffs = VectorXq(-expr.coeffs / c);
        expr.constant = -expr.constant / c;
        equations.erase(equations.begin() + pivot);
        for (auto& r : equations) substitute(r, col, expr);
        for (auto& r : inequalities) substitute(r, col, expr);
    }

    // Remaining equations touch only s (or nothing).
    for (auto& r : equations) {
        bool nontrivial = r.coeffs(s_index) != 0;
        bool zero_rest = true;
        for (int j = 0; j < s_index; ++j)
            if (r.coeffs(j) != 0) zero_rest = false;
        if (!zero_rest) continue;  // unused free variable remained; handled below
        if (nontrivial) {
            AffineRow e;
            e.coeffs = VectorXq::Zero(1);
            e.coeffs(0) = r.coeffs(s_index);
            e.constant = r.constant;
            out.equations.push_back(e);
        } else if (r.constant != 0) {
            out.inconsistent = true;
        }
    }

    // Fourier-Motzkin elimination of leftover free variables in inequalities.
    for (int col = 0; col < s_index; ++col) {
        bool present = false;
        for (const auto& r : inequalities)
            if (r.coeffs(col) != 0) present = true;
        if (!present) continue;
        std::vector<AffineRow> pos, neg, rest;
        for (const auto& r : inequalities) {
            if (r.coeffs(col) > 0) pos.push_back(r);
            else if (r.coeffs(col) < 0) neg.push_back(r);
            else rest.push_back(r);
        }
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                AffineRow c;
                c.coeffs = VectorXq(p.coeffs * (-q.coeffs(col)) + q.coeffs * p.coeffs(col));
                c.constant = p.constant * (-q.coeffs(col)) + q.constant * p.coeffs(col);
                c.coeffs(col) = 0;
                c.strict = p.strict || q.strict;
                rest.push_back(std::move(c));
            }
        }
        inequalities = std::move(rest);
    }

    for (auto& r : inequalities) {
        AffineRow e;
        e.coeffs = VectorXq::Zero(1);
        e.coeffs(0) = r.coeffs(s_index);
        e.constant = r.constant;
        e.strict = r.strict;
        out.inequalities.push_back(e);
    }
    return out;
}

SInterval solve_interval(const SProjection& proj) {
    SInterval iv;
    if (proj.inconsistent) return iv;

    // Start from s >= 1.
    Rat lo = 1;
    bool lo_strict = false;
    bool unbounded = true;
    Rat hi;
    bool hi_strict = false;
    std::optional<Rat> pin;

    for (const auto& e : proj.equations) {
        if (e.coeffs(0) == 0) {
            if (e.constant != 0) return iv;
            continue;
        }
        Rat s = -e.constant / e.coeffs(0);
        if (pin && *pin != s) return iv;
        pin = s;
    }

    for (const auto& r : proj.inequalities) {
        Rat c = r.coeffs(0);
        if (c == 0) {
            if (r.strict ? !(r.constant > 0) : !(r.constant >= 0)) return iv;
            continue;
        }
        Rat bound = -r.constant / c;
        if (c > 0) {  // s >(=) bound
            if (bound > lo || (bound == lo && r.strict && !lo_strict)) {
                lo = bound;
                lo_strict = r.strict;
            }
        } else {  // s <(=) bound
            if (unbounded || bound < hi || (bound == hi && r.strict && !hi_strict)) {
                unbounded = false;
                hi = bound;
                hi_strict = r.strict;
            }
        }
    }

    if (pin) {
        if ((lo_strict ? *pin > lo : *pin >= lo) &&
            (unbounded || (hi_strict ? *pin < hi : *pin <= hi))) {
            iv.empty = false;
            iv.lo = *pin;
            iv.lo_strict = false;
            iv.unbounded = false;
            iv.hi = *pin;
            iv.hi_strict = false;
        }
        return iv;
    }

    if (!unbounded) {
        if (hi < lo || (hi == lo && (lo_strict || hi_strict))) return iv;
    }
    iv.empty = false;
    iv.lo = lo;
    iv.lo_strict = lo_strict;
    iv.unbounded = unbounded;
    iv.hi = hi;
    iv.hi_strict = hi_strict;
    return iv;
}

}  // namespace coral
