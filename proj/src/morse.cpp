#include "coral/morse.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace coral {

bool operator==(const MorseTree& a, const MorseTree& b) {
    return a.root == b.root && a.adjacency == b.adjacency && a.decoration == b.decoration && a.phi == b.phi;
}

namespace {

struct Structure {
    std::vector<int> externals;                 // contour order, root excluded
    std::map<int, int> parent;                  // toward-root orientation
    std::map<int, std::vector<int>> children;
    std::map<EdgeKey, std::pair<int, int>> span;  // 1-based contour interval behind the edge
    std::map<EdgeKey, Int> accel;
};

int valency_of(const MorseTree& m, int v) { return static_cast<int>(m.adjacency.at(v).size()); }

std::vector<std::string> structural_report(const MorseTree& m) {
    std::vector<std::string> report;
    auto bad = [&](const std::string& s) { report.push_back(s); };
    if (m.adjacency.empty()) {
        bad("empty tree");
        return report;
    }
    if (!m.adjacency.count(m.root)) bad("root is not a vertex");
    size_t edge_count = 0;
    for (const auto& [v, nbrs] : m.adjacency) {
        std::set<int> seen;
        for (int w : nbrs) {
            if (w == v) bad("self loop at vertex " + std::to_string(v));
            if (!m.adjacency.count(w)) bad("unknown neighbour of vertex " + std::to_string(v));
            else if (std::find(m.adjacency.at(w).begin(), m.adjacency.at(w).end(), v) == m.adjacency.at(w).end())
                bad("asymmetric adjacency between " + std::to_string(v) + " and " + std::to_string(w));
            if (!seen.insert(w).second) bad("repeated edge at vertex " + std::to_string(v));
        }
        edge_count += nbrs.size();
        if (nbrs.size() == 2) bad("divalent vertex " + std::to_string(v));
        if (!m.phi.count(v)) bad("missing phi value at vertex " + std::to_string(v));
    }
    if (!report.empty()) return report;
    edge_count /= 2;
    if (edge_count + 1 != m.adjacency.size()) bad("Betti number nonzero");
    {
        std::set<int> seen{m.adjacency.begin()->first};
        std::deque<int> queue{m.adjacency.begin()->first};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : m.adjacency.at(v))
                if (seen.insert(w).second) queue.push_back(w);
        }
        if (seen.size() != m.adjacency.size()) bad("tree not connected");
    }
    if (valency_of(m, m.root) != 1) bad("root is not external");
    int d_plus_1 = 0;
    for (const auto& [v, nbrs] : m.adjacency)
        if (nbrs.size() == 1) ++d_plus_1;
    if (static_cast<int>(m.decoration.size()) != d_plus_1)
        bad("decoration size differs from the number of external vertices");
    if (d_plus_1 < 2) bad("need at least two external vertices");
    {
        std::set<Int> vals(m.decoration.begin(), m.decoration.end());
        if (vals.size() != m.decoration.size()) bad("decoration integers not distinct");
    }
    return report;
}

// Contour walk: departing along the cyclic successor of the arrival edge
// lists the external vertices in anticlockwise region order.
std::vector<int> contour_externals(const MorseTree& m) {
    std::vector<int> out;
    int start_v = m.root;
    int start_w = m.adjacency.at(m.root)[0];
    int v = start_v, w = start_w;
    do {
        const auto& nbrs = m.adjacency.at(w);
        if (nbrs.size() == 1) {
            if (w != m.root) out.push_back(w);
            v = w;
            w = nbrs[0];
        } else {
            auto it = std::find(nbrs.begin(), nbrs.end(), v);
            int next = nbrs[(it - nbrs.begin() + 1) % nbrs.size()];
            v = w;
            w = next;
        }
    } while (!(v == start_v && w == start_w));
    return out;
}

Structure analyze(const MorseTree& m) {
    Structure st;
    st.externals = contour_externals(m);

    st.parent[m.root] = -1;
    std::deque<int> queue{m.root};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : m.adjacency.at(v)) {
            if (st.parent.count(w)) continue;
            st.parent[w] = v;
            st.children[v].push_back(w);
            queue.push_back(w);
        }
    }

    std::map<int, int> index;  // external -> 1-based contour index
    for (size_t i = 0; i < st.externals.size(); ++i) index[st.externals[i]] = static_cast<int>(i) + 1;

    // Post-order accumulation of contour intervals.
    std::map<int, std::pair<int, int>> range;
    std::vector<int> order;
    for (int x : st.externals) order.push_back(x);
    // Gather subtree ranges bottom-up over all non-root vertices.
    std::vector<int> stack{m.root};
    std::vector<int> post;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        post.push_back(v);
        for (int w : st.children[v]) stack.push_back(w);
    }
    std::reverse(post.begin(), post.end());
    for (int v : post) {
        if (st.children[v].empty()) {
            if (v == m.root) continue;
            range[v] = {index.at(v), index.at(v)};
        } else {
            int lo = 0, hi = 0, count = 0;
            for (int w : st.children[v]) {
                auto [a, b] = range.at(w);
                if (lo == 0 || a < lo) lo = a;
                if (b > hi) hi = b;
                count += b - a + 1;
            }
            if (count != hi - lo + 1)
                throw Error(Errc::Internal, "contour intervals not contiguous");
            range[v] = {lo, hi};
        }
    }

    for (const auto& [v, p] : st.parent) {
        if (p < 0) continue;
        auto [a, b] = range.at(v);
        st.span[edge_key(v, p)] = {a, b};
        st.accel[edge_key(v, p)] = m.decoration[b] - m.decoration[a - 1];
    }
    return st;
}

}  // namespace

std::pair<std::vector<std::string>, std::optional<VelocityProfile>> validate_tmt(const MorseTree& m) {
    std::vector<std::string> report = structural_report(m);
    if (!report.empty()) return {report, std::nullopt};
    auto bad = [&](const std::string& s) { report.push_back(s); };

    Structure st = analyze(m);
    VelocityProfile prof;
    prof.contour = st.externals;

    // Endpoint rationality: phi(x) in (1/n_e) Z for the edge at each external.
    auto check_rational = [&](int x) {
        int other = m.adjacency.at(x)[0];
        const Int& n = st.accel.at(edge_key(x, other));
        Rat scaled = m.phi.at(x) * n;
        if (denominator(scaled) != 1)
            bad("phi at external vertex " + std::to_string(x) + " is not in (1/n_e)Z");
    };
    check_rational(m.root);
    for (int x : st.externals) check_rational(x);

    // Velocity propagation toward the root.
    std::vector<int> post;
    {
        std::vector<int> stack{m.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            post.push_back(v);
            for (int w : st.children[v]) stack.push_back(w);
        }
        std::reverse(post.begin(), post.end());
    }
    for (int v : post) {
        if (v == m.root) continue;
        int p = st.parent.at(v);
        EdgeVelocity ev;
        ev.child = v;
        ev.parent = p;
        ev.accel = st.accel.at(edge_key(v, p));
        if (st.children[v].empty()) {
            ev.v_start = 0;  // velocity vanishes at externals
        } else {
            ev.v_start = 0;
            for (int w : st.children[v]) ev.v_start += prof.edges.at(edge_key(w, v)).v_end;
        }
        Rat len = m.phi.at(p) - m.phi.at(v);
        ev.v_end = ev.v_start + Rat(ev.accel) * len;
        ev.contracted = (len == 0);
        if (ev.contracted) {
            if (ev.v_start != 0)
                bad("nonzero velocity on contracted edge (" + std::to_string(v) + "," + std::to_string(p) + ")");
        } else {
            int sgn = len > 0 ? 1 : -1;
            bool ok_start = sgn > 0 ? ev.v_start >= 0 : ev.v_start <= 0;
            bool ok_end = sgn > 0 ? ev.v_end >= 0 : ev.v_end <= 0;
            if (!ok_start || !ok_end || (ev.v_start == 0 && ev.v_end == 0))
                bad("velocity on edge (" + std::to_string(v) + "," + std::to_string(p) +
                    ") does not point along the image");
        }
        prof.edges[edge_key(v, p)] = ev;
    }

    // Root velocity must close to zero.
    {
        int c = m.adjacency.at(m.root)[0];
        const EdgeVelocity& ev = prof.edges.at(edge_key(c, m.root));
        if (ev.v_end != 0) bad("root velocity is nonzero");
    }

    // Contraction law: exactly the external edges predicted by the sign of
    // the acceleration are contracted.
    for (const auto& [key, ev] : prof.edges) {
        bool leaf_edge = st.children[ev.child].empty();
        bool root_edge = ev.parent == m.root;
        bool predicted = (leaf_edge && ev.accel < 0) || (root_edge && ev.accel > 0);
        if (predicted != ev.contracted)
            bad("contraction law fails on edge (" + std::to_string(ev.child) + "," + std::to_string(ev.parent) + ")");
    }

    if (!report.empty()) return {report, std::nullopt};
    return {report, prof};
}

bool is_general_tmt(const MorseTree& m) {
    auto [report, prof] = validate_tmt(m);
    if (!prof) return false;
    for (const auto& [v, nbrs] : m.adjacency) {
        if (nbrs.size() > 1 && nbrs.size() != 3) return false;
        int contracted_here = 0;
        for (int w : nbrs)
            if (prof->edges.at(edge_key(v, w)).contracted) ++contracted_here;
        if (contracted_here > 1) return false;
    }
    return true;
}

namespace {

// Weighted direction of the coral edge behind a tree edge, pointing from the
// parent side toward the child side: (accel*phi(child) - v_start, accel).
LatticeVector edge_momentum(const MorseTree& m, const EdgeVelocity& ev) {
    Rat q = Rat(ev.accel) * m.phi.at(ev.child) - ev.v_start;
    if (denominator(q) != 1) throw Error(Errc::Internal, "edge momentum not integral");
    return lvec(numerator(q), ev.accel);
}

}  // namespace

TmtTypeMap tmt_to_type_mapped(const MorseTree& m) {
    auto [report, prof] = validate_tmt(m);
    if (!prof) throw Error(Errc::InvalidTMT, "tmt_to_type: " + report.front());

    // Externals on contracted edges become negative vertices, the rest give
    // positive ends.
    std::set<int> negative_externals, positive_externals;
    auto classify = [&](int x) {
        int other = m.adjacency.at(x)[0];
        if (prof->edges.at(edge_key(x, other)).contracted) negative_externals.insert(x);
        else positive_externals.insert(x);
    };
    classify(m.root);
    for (int x : prof->contour) classify(x);
    if (negative_externals.empty())
        throw Error(Errc::InvalidTMT, "tmt_to_type: no contracted external edge, so no negative vertex");
    if (positive_externals.empty())
        throw Error(Errc::InvalidTMT, "tmt_to_type: every external edge is contracted, so no positive end");

    TmtTypeMap out;
    CoralType& t = out.type;

    for (const auto& [v, nbrs] : m.adjacency) {
        if (nbrs.size() > 1) t.graph.vertices[v] = VertexClass::Interior;
        else if (negative_externals.count(v)) t.graph.vertices[v] = VertexClass::Negative;
    }
    // The two-external tree leaves no interior vertices and is rejected above
    // unless one side is positive and one negative; that single edge case:
    if (m.adjacency.size() == 2) {
        int neg = *negative_externals.begin();
        int pos = *positive_externals.begin();
        const EdgeVelocity& ev = prof->edges.begin()->second;
        LatticeVector mom = edge_momentum(m, ev);
        // momentum points toward the child side; orient toward the positive external
        LatticeVector toward_pos = ev.child == pos ? mom : LatticeVector(-mom);
        auto [u, w] = primitive(toward_pos);
        t.graph.positive_edges[0] = neg;
        t.graph.weights[0] = w;
        t.graph.labels = {0};
        t.flag_dirs[Flag{neg, 0}] = u;
        auto [un, wn] = primitive(LatticeVector(-toward_pos));
        t.negvert_dirs[neg] = un;
        t.negvert_weights[neg] = wn;
        out.external_to_coral[pos] = TmtRoot{true, 0};
        out.external_to_coral[neg] = TmtRoot{false, neg};
        return out;
    }

    // Positive edge ids 0..l-1 in contour order, root-positive last.
    std::vector<int> positive_order;
    for (int x : prof->contour)
        if (positive_externals.count(x)) positive_order.push_back(x);
    if (positive_externals.count(m.root)) positive_order.push_back(m.root);
    int next_edge = static_cast<int>(positive_order.size());

    std::map<int, int> pos_edge_of;
    for (size_t i = 0; i < positive_order.size(); ++i) {
        pos_edge_of[positive_order[i]] = static_cast<int>(i);
        t.graph.labels.push_back(static_cast<int>(i));
    }

    for (const auto& [key, ev] : prof->edges) {
        LatticeVector mom = edge_momentum(m, ev);  // at parent side, toward child
        bool child_ext = m.adjacency.at(ev.child).size() == 1;
        bool parent_ext = ev.parent == m.root && m.adjacency.at(m.root).size() == 1;

        if (child_ext && positive_externals.count(ev.child)) {
            int e = pos_edge_of.at(ev.child);
            auto [u, w] = primitive(mom);
            t.graph.positive_edges[e] = ev.parent;
            t.graph.weights[e] = w;
            t.flag_dirs[Flag{ev.parent, e}] = u;
            out.external_to_coral[ev.child] = TmtRoot{true, e};
            continue;
        }
        if (parent_ext && positive_externals.count(ev.parent)) {
            int e = pos_edge_of.at(ev.parent);
            auto [u, w] = primitive(LatticeVector(-mom));  // toward the root external
            t.graph.positive_edges[e] = ev.child;
            t.graph.weights[e] = w;
            t.flag_dirs[Flag{ev.child, e}] = u;
            out.external_to_coral[ev.parent] = TmtRoot{true, e};
            continue;
        }
        // Bounded edge of the coral; a negative external stays a vertex.
        int e = next_edge++;
        auto [u, w] = primitive(mom);
        t.graph.bounded_edges[e] = {ev.child, ev.parent};
        t.graph.weights[e] = w;
        t.flag_dirs[Flag{ev.parent, e}] = u;
        t.flag_dirs[Flag{ev.child, e}] = -u;
        if (child_ext && negative_externals.count(ev.child)) {
            auto [un, wn] = primitive(mom);  // points down toward the child
            t.negvert_dirs[ev.child] = un;
            t.negvert_weights[ev.child] = wn;
            out.external_to_coral[ev.child] = TmtRoot{false, ev.child};
        }
        if (parent_ext && negative_externals.count(ev.parent)) {
            auto [un, wn] = primitive(LatticeVector(-mom));  // down toward the root
            t.negvert_dirs[ev.parent] = un;
            t.negvert_weights[ev.parent] = wn;
            out.external_to_coral[ev.parent] = TmtRoot{false, ev.parent};
        }
    }
    return out;
}

CoralType tmt_to_type(const MorseTree& m) { return tmt_to_type_mapped(m).type; }

LiftResult lift_tmt(const MorseTree& m, const std::vector<Rat>& heights) {
    if (!is_general_tmt(m)) throw Error(Errc::InvalidTMT, "lift_tmt: tree is not a valid general Morse tree");
    TmtTypeMap tm = tmt_to_type_mapped(m);
    const CoralType& t = tm.type;

    int l = static_cast<int>(t.graph.labels.size());
    if (static_cast<int>(heights.size()) != l - 1)
        throw Error(Errc::HeightsInfeasible, "lift_tmt: expected " + std::to_string(l - 1) + " heights");

    AffinePositions ap = affine_positions(t);

    // Interior vertices adjacent to a negative vertex are pinned by ray
    // intersections; the others consume the height parameters.
    std::set<int> adjacent_to_negative;
    for (const auto& [e, vw] : t.graph.bounded_edges) {
        if (t.graph.vertices.at(vw.first) == VertexClass::Negative) adjacent_to_negative.insert(vw.second);
        if (t.graph.vertices.at(vw.second) == VertexClass::Negative) adjacent_to_negative.insert(vw.first);
    }
    std::vector<std::pair<int, Rat>> pins;  // vertex -> pinned height
    if (l >= 2) {
        int anchor_interior = -1;
        for (const auto& [e, vw] : t.graph.bounded_edges) {
            if (vw.first == ap.anchor) anchor_interior = vw.second;
            if (vw.second == ap.anchor) anchor_interior = vw.first;
        }
        if (anchor_interior < 0) throw Error(Errc::Internal, "lift_tmt: anchor has no interior neighbour");
        pins.push_back({anchor_interior, heights[0]});
        size_t next = 1;
        for (const auto& [v, cls] : t.graph.vertices) {
            if (cls != VertexClass::Interior || adjacent_to_negative.count(v)) continue;
            if (next >= heights.size())
                throw Error(Errc::Internal, "lift_tmt: more free interior vertices than heights");
            pins.push_back({v, heights[next++]});
        }
        if (next != heights.size())
            throw Error(Errc::Internal, "lift_tmt: fewer free interior vertices than heights");
    }

    int n = ap.n;
    int rows = 0;
    for (const auto& [v, u] : t.negvert_dirs)
        if (v != ap.anchor) rows += 2;
    rows += static_cast<int>(pins.size());
    if (rows != n) throw Error(Errc::Internal, "lift_tmt: system is not square");

    MatrixXq A = MatrixXq::Zero(rows, n);
    VectorXq b(rows);
    int r = 0;
    for (const auto& [v, u] : t.negvert_dirs) {
        if (v == ap.anchor) continue;
        RationalPoint forced = forced_negative_position(u);
        for (int row = 0; row < 2; ++row) {
            for (int j = 0; j < n; ++j) A(r, j) = ap.coeff.at(v)(row, j);
            b(r) = forced(row) - ap.base.at(v)(row);
            ++r;
        }
    }
    for (const auto& [v, h] : pins) {
        for (int j = 0; j < n; ++j) A(r, j) = ap.coeff.at(v)(1, j);
        b(r) = h - ap.base.at(v)(1);
        ++r;
    }

    VectorXq x(n);
    if (n > 0) {
        Eigen::FullPivLU<MatrixXq> lu(A);
        if (static_cast<int>(lu.rank()) < n)
            throw Error(Errc::Internal, "lift_tmt: singular lift system");
        x = lu.solve(b);
    }

    TropicalCoral c;
    c.ctype = t;
    for (const auto& [v, cls] : t.graph.vertices) {
        RationalPoint p = ap.base.at(v);
        for (int j = 0; j < n; ++j) {
            p(0) += ap.coeff.at(v)(0, j) * x(j);
            p(1) += ap.coeff.at(v)(1, j) * x(j);
        }
        c.positions[v] = p;
    }
    for (int j = 0; j < n; ++j)
        if (!(x(j) > 0))
            throw Error(Errc::HeightsInfeasible, "lift_tmt: heights force a non-positive edge length");
    for (const auto& [v, cls] : t.graph.vertices)
        if (cls == VertexClass::Interior && !(c.positions.at(v)(1) > 1))
            throw Error(Errc::HeightsInfeasible, "lift_tmt: interior vertex not strictly above height 1");
    auto rep = validate_coral(c);
    if (!rep.empty()) throw Error(Errc::HeightsInfeasible, "lift_tmt: " + rep.front());

    return LiftResult{std::move(c), tm.external_to_coral.at(m.root)};
}

namespace {

Rat slope(const LatticeVector& u) {
    if (u(1) == 0) throw Error(Errc::NotGoodType, "horizontal direction has no slope");
    return Rat(u(0), u(1));
}

void require_good_type(const TropicalCoral& c) {
    for (const auto& [f, u] : c.ctype.flag_dirs)
        if (u(1) == 0) throw Error(Errc::NotGoodType, "flag direction with zero height component");
    for (const auto& [v, u] : c.ctype.negvert_dirs)
        if (u(1) == 0) throw Error(Errc::NotGoodType, "negative direction with zero height component");
}

}  // namespace

TmtRoot canonical_tmt_root(const TropicalCoral& c) {
    std::optional<std::pair<Rat, TmtRoot>> best;
    auto consider = [&](const Rat& phi, TmtRoot cand) {
        // Minimal phi; negative vertices beat positive edges on ties, lower id last.
        if (!best || phi < best->first ||
            (phi == best->first && std::make_pair(cand.is_positive_edge, cand.id) <
                                       std::make_pair(best->second.is_positive_edge, best->second.id)))
            best = {phi, cand};
    };
    for (const auto& [v, cls] : c.ctype.graph.vertices)
        if (cls == VertexClass::Negative) consider(c.positions.at(v)(0), TmtRoot{false, v});
    for (const auto& [e, v] : c.ctype.graph.positive_edges)
        consider(slope(flag_dir(c.ctype, v, e)), TmtRoot{true, e});
    if (!best) throw Error(Errc::InvalidCoral, "canonical_tmt_root: no external candidates");
    return best->second;
}

MorseTree coral_to_tmt(const TropicalCoral& c, const TmtRoot& root) {
    auto report = validate_coral(c);
    if (!report.empty()) throw Error(Errc::InvalidCoral, "coral_to_tmt: " + report.front());
    if (!is_general(c)) throw Error(Errc::NonGeneralCoral, "coral_to_tmt: coral must be general");
    require_good_type(c);

    const CoralGraph& g = c.ctype.graph;

    // Tree vertices: coral vertices plus one fresh external per positive end.
    int next_id = 0;
    for (const auto& [v, cls] : g.vertices) next_id = std::max(next_id, v + 1);
    std::map<int, int> positive_external;  // positive edge -> fresh vertex id
    for (int e : g.labels) positive_external[e] = next_id++;

    int root_vertex;
    if (root.is_positive_edge) {
        if (!positive_external.count(root.id))
            throw Error(Errc::BadIndex, "coral_to_tmt: root positive edge does not exist");
        root_vertex = positive_external.at(root.id);
    } else {
        auto it = g.vertices.find(root.id);
        if (it == g.vertices.end() || it->second != VertexClass::Negative)
            throw Error(Errc::BadIndex, "coral_to_tmt: root must be a negative vertex or positive edge");
        root_vertex = root.id;
    }

    MorseTree m;
    m.root = root_vertex;

    // Ribbon structure: edges at each coral vertex in anticlockwise order of
    // their geometric directions.
    struct Dart {
        int other;
        LatticeVector dir;
    };
    for (const auto& [v, cls] : g.vertices) {
        std::vector<Dart> darts;
        for (const auto& [e, w] : g.positive_edges)
            if (w == v) darts.push_back({positive_external.at(e), flag_dir(c.ctype, v, e)});
        for (const auto& [e, vw] : g.bounded_edges) {
            if (vw.first == v) darts.push_back({vw.second, flag_dir(c.ctype, v, e)});
            if (vw.second == v) darts.push_back({vw.first, flag_dir(c.ctype, v, e)});
        }
        std::sort(darts.begin(), darts.end(),
                  [](const Dart& a, const Dart& b) { return angular_less(a.dir, b.dir); });
        auto& lst = m.adjacency[v];
        for (const auto& d : darts) lst.push_back(d.other);
    }
    for (const auto& [e, w] : g.positive_edges) m.adjacency[positive_external.at(e)] = {w};

    // phi: negative vertices sit at their boundary coordinate, positive
    // externals at the slope of their end, interior vertices at the slope of
    // the flag pointing toward the root.
    std::map<int, int> parent;
    parent[root_vertex] = -1;
    std::deque<int> queue{root_vertex};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : m.adjacency.at(v)) {
            if (parent.count(w)) continue;
            parent[w] = v;
            queue.push_back(w);
        }
    }

    auto coral_flag_between = [&](int v, int w) -> LatticeVector {
        // Direction at coral vertex v of the tree edge toward tree vertex w.
        for (const auto& [e, base] : g.positive_edges)
            if (base == v && positive_external.at(e) == w) return flag_dir(c.ctype, v, e);
        for (const auto& [e, vw] : g.bounded_edges) {
            if (vw.first == v && vw.second == w) return flag_dir(c.ctype, v, e);
            if (vw.second == v && vw.first == w) return flag_dir(c.ctype, v, e);
        }
        throw Error(Errc::Internal, "coral_to_tmt: missing tree edge");
    };

    std::map<int, int> edge_of_external;  // fresh external vertex -> positive edge id
    for (const auto& [e, x] : positive_external) edge_of_external[x] = e;

    for (const auto& [v, nbrs] : m.adjacency) {
        if (g.vertices.count(v) && g.vertices.at(v) == VertexClass::Negative) {
            m.phi[v] = c.positions.at(v)(0);
        } else if (!g.vertices.count(v)) {
            int e = edge_of_external.at(v);
            m.phi[v] = slope(flag_dir(c.ctype, g.positive_edges.at(e), e));
        } else {
            m.phi[v] = slope(coral_flag_between(v, parent.at(v)));
        }
    }

    // Decoration from the leaf accelerations along the contour, anchored at
    // n_0 = 0. The acceleration of a leaf edge is the height component of
    // the weighted direction pointing toward the leaf.
    std::vector<int> externals = contour_externals(m);
    auto leaf_accel = [&](int x) -> Int {
        if (!g.vertices.count(x)) {
            int e = edge_of_external.at(x);
            return (flag_dir(c.ctype, g.positive_edges.at(e), e) * g.weights.at(e))(1);
        }
        int e = incident_edges(g, x)[0];  // negative vertices are univalent
        int other = m.adjacency.at(x)[0];
        return (coral_flag_between(other, x) * g.weights.at(e))(1);
    };
    m.decoration.assign(externals.size() + 1, Int(0));
    for (size_t t_i = 0; t_i < externals.size(); ++t_i)
        m.decoration[t_i + 1] = m.decoration[t_i] + leaf_accel(externals[t_i]);

    // Root edge consistency: its acceleration must equal n_d - n_0.
    {
        Int root_acc;
        if (g.vertices.count(root_vertex)) {
            int e = incident_edges(g, root_vertex)[0];
            root_acc = (flag_dir(c.ctype, root_vertex, e) * g.weights.at(e))(1);
        } else {
            int e = edge_of_external.at(root_vertex);
            root_acc = -(flag_dir(c.ctype, g.positive_edges.at(e), e) * g.weights.at(e))(1);
        }
        if (root_acc != m.decoration.back() - m.decoration.front())
            throw Error(Errc::Internal, "coral_to_tmt: root acceleration inconsistent with decoration");
    }
    return m;
}

MorseTree canonical_tmt(const MorseTree& m) {
    // Relabel by first visit along the contour walk, rotate adjacency lists
    // to start at the parent edge.
    std::map<int, int> relabel;
    int next = 0;
    relabel[m.root] = next++;
    int start_v = m.root, start_w = m.adjacency.at(m.root)[0];
    int v = start_v, w = start_w;
    do {
        if (!relabel.count(w)) relabel[w] = next++;
        const auto& nbrs = m.adjacency.at(w);
        int nxt;
        if (nbrs.size() == 1) {
            nxt = nbrs[0];
        } else {
            auto it = std::find(nbrs.begin(), nbrs.end(), v);
            nxt = nbrs[(it - nbrs.begin() + 1) % nbrs.size()];
        }
        v = w;
        w = nxt;
    } while (!(v == start_v && w == start_w));

    std::map<int, int> parent;
    parent[m.root] = -1;
    std::deque<int> queue{m.root};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : m.adjacency.at(x)) {
            if (parent.count(y)) continue;
            parent[y] = x;
            queue.push_back(y);
        }
    }

    MorseTree out;
    out.root = relabel.at(m.root);
    out.decoration = m.decoration;
    for (const auto& [x, p] : m.phi) out.phi[relabel.at(x)] = p;
    for (const auto& [x, nbrs] : m.adjacency) {
        std::vector<int> rotated;
        size_t start = 0;
        if (parent.at(x) >= 0) {
            auto it = std::find(nbrs.begin(), nbrs.end(), parent.at(x));
            start = it - nbrs.begin();
        }
        for (size_t i = 0; i < nbrs.size(); ++i) rotated.push_back(relabel.at(nbrs[(start + i) % nbrs.size()]));
        out.adjacency[relabel.at(x)] = rotated;
    }
    return out;
}

}  // namespace coral
