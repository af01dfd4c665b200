#include "coral/moduli.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace coral {

namespace {

struct RawTree {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> edges;
};

// All unrooted trees with trivalent internal nodes on leaves 0..n-1, built by
// inserting one leaf at a time into every edge.
std::vector<RawTree> trivalent_trees(int n_leaves) {
    std::vector<RawTree> trees;
    RawTree base;
    base.n_nodes = n_leaves;
    if (n_leaves < 2) return trees;
    base.edges.push_back({0, 1});
    trees.push_back(base);
    for (int leaf = 2; leaf < n_leaves; ++leaf) {
        std::vector<RawTree> next;
        for (const RawTree& t : trees) {
            for (size_t ei = 0; ei < t.edges.size(); ++ei) {
                RawTree s = t;
                auto [a, b] = s.edges[ei];
                int c = s.n_nodes++;
                s.edges[ei] = {a, c};
                s.edges.push_back({c, b});
                s.edges.push_back({c, leaf});
                next.push_back(std::move(s));
            }
        }
        trees = std::move(next);
    }
    return trees;
}

// Leaves on the `from` side of edge (from, to), with the edge removed.
std::vector<int> side_leaves(const RawTree& t, int n_leaves, int from, int to) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : t.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> out;
    std::set<int> seen{from};
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v < n_leaves) out.push_back(v);
        for (int w : adj[v]) {
            if (v == from && w == to) continue;
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return out;
}

// Assembles the coral type of a trivalent tree whose leaves carry the degree
// entries; returns nothing when an internal direction degenerates to zero.
std::optional<CoralType> tree_to_type(const RawTree& tree, const Degree& d) {
    int l = static_cast<int>(d.positive.size());
    int m = static_cast<int>(d.negative.size());
    int n_leaves = l + m;
    auto entry = [&](int leaf) -> const LatticeVector& {
        return leaf < l ? d.positive[leaf] : d.negative[leaf - l];
    };

    CoralType t;
    // Vertex ids: internal nodes and negative leaves keep their raw ids.
    for (int v = l; v < n_leaves; ++v) t.graph.vertices[v] = VertexClass::Negative;
    for (int v = n_leaves; v < tree.n_nodes; ++v) t.graph.vertices[v] = VertexClass::Interior;

    int next_edge = l;  // positive edges take ids 0..l-1 (their degree index)
    for (const auto& [a, b] : tree.edges) {
        bool a_pos = a < l, b_pos = b < l;
        if (a_pos && b_pos) return std::nullopt;  // two positive ends joined: no vertex at all
        // Weighted direction pointing toward the a-side equals the sum of the
        // a-side end vectors.
        LatticeVector toward_a = lvec(0, 0);
        for (int leaf : side_leaves(tree, n_leaves, a, b)) toward_a += entry(leaf);
        if (a_pos || b_pos) {
            int leaf = a_pos ? a : b;
            int base = a_pos ? b : a;
            int e = leaf;  // degree index as edge id
            auto [u, w] = primitive(entry(leaf));
            t.graph.positive_edges[e] = base;
            t.graph.weights[e] = w;
            t.flag_dirs[Flag{base, e}] = u;
            continue;
        }
        if (is_zero(toward_a)) return std::nullopt;
        auto [u, w] = primitive(toward_a);
        int e = next_edge++;
        t.graph.bounded_edges[e] = {a, b};
        t.graph.weights[e] = w;
        t.flag_dirs[Flag{b, e}] = u;                    // at b pointing toward a
        t.flag_dirs[Flag{a, e}] = -u;
    }
    for (int i = 0; i < l; ++i) t.graph.labels.push_back(i);
    for (int j = 0; j < m; ++j) {
        auto [u, w] = primitive(d.negative[j]);
        t.negvert_dirs[l + j] = u;
        t.negvert_weights[l + j] = w;
    }
    if (!validate_graph(t.graph).empty()) return std::nullopt;
    return t;
}

// Contracts a subset of bounded edges; returns nothing when the result is not
// a type of the same degree.
std::optional<CoralType> contract_edges(const CoralType& t, const std::set<int>& contracted) {
    std::map<int, int> rep;  // union-find via map
    std::function<int(int)> find = [&](int v) {
        auto it = rep.find(v);
        if (it == rep.end() || it->second == v) return v;
        return it->second = find(it->second);
    };
    for (const auto& [v, cls] : t.graph.vertices) rep[v] = v;
    for (int e : contracted) {
        auto [a, b] = t.graph.bounded_edges.at(e);
        int ra = find(a), rb = find(b);
        if (ra != rb) rep[std::max(ra, rb)] = std::min(ra, rb);
    }

    // Component class and negative data.
    std::map<int, std::vector<int>> members;
    for (const auto& [v, cls] : t.graph.vertices) members[find(v)].push_back(v);

    CoralType out;
    for (const auto& [r, vs] : members) {
        std::vector<int> negs;
        for (int v : vs)
            if (t.graph.vertices.at(v) == VertexClass::Negative) negs.push_back(v);
        if (negs.empty()) {
            out.graph.vertices[r] = VertexClass::Interior;
            continue;
        }
        // All merged negative vertices must share one ray.
        for (int v : negs)
            if (!eq(t.negvert_dirs.at(v), t.negvert_dirs.at(negs[0]))) return std::nullopt;
        if (negs.size() > 1) return std::nullopt;  // would change the negative part of the degree
        out.graph.vertices[r] = VertexClass::Negative;
        out.negvert_dirs[r] = t.negvert_dirs.at(negs[0]);
    }

    for (const auto& [e, v] : t.graph.positive_edges) {
        out.graph.positive_edges[e] = find(v);
        out.graph.weights[e] = t.graph.weights.at(e);
        out.flag_dirs[Flag{find(v), e}] = flag_dir(t, v, e);
    }
    for (const auto& [e, vw] : t.graph.bounded_edges) {
        if (contracted.count(e)) continue;
        int a = find(vw.first), b = find(vw.second);
        if (a == b) return std::nullopt;
        out.graph.bounded_edges[e] = {a, b};
        out.graph.weights[e] = t.graph.weights.at(e);
        out.flag_dirs[Flag{a, e}] = flag_dir(t, vw.first, e);
        out.flag_dirs[Flag{b, e}] = flag_dir(t, vw.second, e);
    }
    out.graph.labels = t.graph.labels;

    // Re-solve the ray weight at each negative vertex.
    for (const auto& [v, u] : out.negvert_dirs) {
        LatticeVector sum = lvec(0, 0);
        for (int e : incident_edges(out.graph, v))
            sum += LatticeVector(out.flag_dirs.at(Flag{v, e}) * out.graph.weights.at(e));
        if (is_zero(sum)) return std::nullopt;
        auto [pu, g] = primitive(LatticeVector(-sum));
        if (!eq(pu, u)) return std::nullopt;
        out.negvert_weights[v] = g;
    }

    if (!validate_graph(out.graph).empty()) return std::nullopt;
    return out;
}

}  // namespace

TypeCatalog enumerate_types(const Degree& d, bool general_only) {
    TypeCatalog cat;
    cat.degree = d;
    int l = static_cast<int>(d.positive.size());
    int m = static_cast<int>(d.negative.size());
    if (l < 1 || m < 1) throw Error(Errc::EmptyDegree, "enumerate_types: degree needs positive and negative ends");
    for (const auto& v : d.positive) {
        if (is_zero(v) || v(1) <= 0) throw Error(Errc::EmptyDegree, "enumerate_types: positive entry with height <= 0");
    }
    for (const auto& v : d.negative) {
        if (is_zero(v) || v(1) >= 0) throw Error(Errc::EmptyDegree, "enumerate_types: negative entry with height >= 0");
    }

    LatticeVector total = lvec(0, 0);
    for (const auto& v : d.positive) total += v;
    for (const auto& v : d.negative) total += v;
    if (!is_zero(total)) return cat;  // no balanced type exists

    std::set<std::string> seen;
    std::vector<std::pair<std::string, CoralType>> found;
    auto add = [&](const CoralType& t) {
        CoralType ct = canonical_type(t);
        std::string sig = type_signature(ct);
        if (seen.insert(sig).second) found.push_back({sig, std::move(ct)});
    };

    for (const RawTree& tree : trivalent_trees(l + m)) {
        auto t = tree_to_type(tree, d);
        if (!t) continue;
        add(*t);
        if (general_only) continue;
        // Degenerate types: contract subsets of bounded edges.
        std::vector<int> bounded;
        for (const auto& [e, vw] : t->graph.bounded_edges) bounded.push_back(e);
        int nb = static_cast<int>(bounded.size());
        for (int mask = 1; mask < (1 << nb); ++mask) {
            std::set<int> sub;
            for (int i = 0; i < nb; ++i)
                if (mask & (1 << i)) sub.insert(bounded[i]);
            auto degenerate = contract_edges(*t, sub);
            if (!degenerate) continue;
            if (!same_degree(degree_of(*degenerate), d)) continue;
            add(*degenerate);
        }
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [sig, t] : found) cat.types.push_back(std::move(t));
    return cat;
}

namespace {

bool has_germ_collision(const CoralType& t) {
    for (const auto& [v, cls] : t.graph.vertices) {
        auto edges = incident_edges(t.graph, v);
        for (size_t i = 0; i < edges.size(); ++i)
            for (size_t j = i + 1; j < edges.size(); ++j)
                if (eq(flag_dir(t, v, edges[i]), flag_dir(t, v, edges[j]))) return true;
    }
    return false;
}

void check_alignment(const CoralType& t, const Constraint& lam) {
    int l = static_cast<int>(t.graph.labels.size());
    if (static_cast<int>(lam.entries.size()) != std::max(0, l - 1))
        throw Error(Errc::DirectionMismatch, "constraint size must be one less than the number of positive ends");
    for (size_t i = 0; i < lam.entries.size(); ++i) {
        int e = t.graph.labels[i];
        int v = t.graph.positive_edges.at(e);
        if (!eq(flag_dir(t, v, e), lam.entries[i].direction))
            throw Error(Errc::DirectionMismatch, "constraint direction does not match labelled end " + std::to_string(i));
    }
}

// Equality rows over (lengths..., s): anchoring of the extra negative
// vertices plus the matching equations with right-hand side s * value.
void build_rows(const CoralType& t, const AffinePositions& ap, const Constraint& lam,
                std::vector<AffineRow>& anchors, std::vector<AffineRow>& matching) {
    int nv = ap.n + 1;  // last variable is s
    for (const auto& [v, u] : t.negvert_dirs) {
        if (v == ap.anchor) continue;
        RationalPoint forced = forced_negative_position(u);
        for (int row = 0; row < 2; ++row) {
            AffineRow r;
            r.coeffs = VectorXq::Zero(nv);
            for (int j = 0; j < ap.n; ++j) r.coeffs(j) = ap.coeff.at(v)(row, j);
            r.constant = ap.base.at(v)(row) - forced(row);
            anchors.push_back(std::move(r));
        }
    }
    for (size_t i = 0; i < lam.entries.size(); ++i) {
        int e = t.graph.labels[i];
        int v = t.graph.positive_edges.at(e);
        LatticeVector nrm = rot90(lam.entries[i].direction);
        AffineRow r;
        r.coeffs = VectorXq::Zero(nv);
        for (int j = 0; j < ap.n; ++j)
            r.coeffs(j) = Rat(nrm(0)) * ap.coeff.at(v)(0, j) + Rat(nrm(1)) * ap.coeff.at(v)(1, j);
        r.constant = Rat(nrm(0)) * ap.base.at(v)(0) + Rat(nrm(1)) * ap.base.at(v)(1);
        r.coeffs(ap.n) = -lam.entries[i].value;  // ... = s * value
        matching.push_back(std::move(r));
    }
}

// Strict positivity of lengths and interior heights above 1.
std::vector<AffineRow> build_inequalities(const CoralType& t, const AffinePositions& ap) {
    int nv = ap.n + 1;
    std::vector<AffineRow> out;
    for (int j = 0; j < ap.n; ++j) {
        AffineRow r;
        r.coeffs = VectorXq::Zero(nv);
        r.coeffs(j) = 1;
        r.constant = 0;
        r.strict = true;
        out.push_back(std::move(r));
    }
    for (const auto& [v, cls] : t.graph.vertices) {
        if (cls != VertexClass::Interior) continue;
        AffineRow r;
        r.coeffs = VectorXq::Zero(nv);
        for (int j = 0; j < ap.n; ++j) r.coeffs(j) = ap.coeff.at(v)(1, j);
        r.constant = ap.base.at(v)(1) - 1;
        r.strict = true;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

SInterval type_feasibility_interval(const CoralType& t, const Constraint& lam) {
    check_alignment(t, lam);
    AffinePositions ap = affine_positions(t);
    std::vector<AffineRow> anchors, matching;
    build_rows(t, ap, lam, anchors, matching);
    std::vector<AffineRow> equations = anchors;
    equations.insert(equations.end(), matching.begin(), matching.end());
    SProjection proj = project_to_last(std::move(equations), build_inequalities(t, ap), ap.n + 1);
    return solve_interval(proj);
}

std::optional<TropicalCoral> realize_with_diagnostics(const CoralType& t, const Constraint& lam,
                                                      RealizeDiagnostics& diag) {
    if (!is_general(t)) throw Error(Errc::NonGeneralType, "realize: type is not general");
    check_alignment(t, lam);
    if (has_germ_collision(t)) return std::nullopt;  // no valid coral of this type

    AffinePositions ap = affine_positions(t);
    std::vector<AffineRow> anchors, matching;
    build_rows(t, ap, lam, anchors, matching);

    int n = ap.n;
    int k = static_cast<int>(matching.size());
    int na = static_cast<int>(anchors.size());
    diag.unknowns = n;
    diag.anchor_rows = na;

    MatrixXq A(na + k, n);
    VectorXq b(na + k);
    for (int r = 0; r < na + k; ++r) {
        const AffineRow& row = r < na ? anchors[r] : matching[r - na];
        for (int j = 0; j < n; ++j) A(r, j) = row.coeffs(j);
        // row: coeffs . x + constant = -coeffs(n) * s with s = 1
        b(r) = -row.constant - row.coeffs(n);
    }

    // Dimension sanity: the anchor equations alone must leave an (l-1)-dim
    // solution space, i.e. have full row rank.
    if (na > 0) {
        Eigen::FullPivLU<MatrixXq> lu0(A.topRows(na));
        diag.anchor_rank = static_cast<int>(lu0.rank());
        diag.pre_constraint_nullity = n - diag.anchor_rank;
    } else {
        diag.anchor_rank = 0;
        diag.pre_constraint_nullity = n;
    }
    int l = static_cast<int>(t.graph.labels.size());
    if (diag.pre_constraint_nullity != l - 1)
        throw Error(Errc::Internal, "realize: solution space before constraints is not (l-1)-dimensional");

    if (n == 0) {
        // Single-edge coral: everything is forced.
        diag.solved = true;
    }

    VectorXq x(n);
    if (n > 0) {
        Eigen::FullPivLU<MatrixXq> lu(A);
        int rank = static_cast<int>(lu.rank());
        x = lu.solve(b);
        bool consistent = (A * x - b).isZero(Rat(0));
        if (rank < n) {
            if (consistent)
                throw Error(Errc::Internal, "realize: underdetermined system; constraint is not general");
            return std::nullopt;
        }
        if (!consistent) return std::nullopt;
        diag.solved = true;
    }

    for (int j = 0; j < n; ++j)
        if (!(x(j) > 0)) return std::nullopt;

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
    for (const auto& [v, cls] : t.graph.vertices)
        if (cls == VertexClass::Interior && !(c.positions.at(v)(1) > 1)) return std::nullopt;

    if (!is_valid_coral(c)) return std::nullopt;
    return canonical_form(c);
}

std::optional<TropicalCoral> realize(const CoralType& t, const Constraint& lam) {
    RealizeDiagnostics diag;
    return realize_with_diagnostics(t, lam, diag);
}

std::vector<QuotientClass> evaluation(const TropicalCoral& c, const std::vector<int>& indices) {
    std::vector<QuotientClass> out;
    const auto& labels = c.ctype.graph.labels;
    for (int idx : indices) {
        if (idx < 1 || idx > static_cast<int>(labels.size()))
            throw Error(Errc::BadIndex, "evaluation: index " + std::to_string(idx) + " out of range");
        int e = labels[idx - 1];
        int v = c.ctype.graph.positive_edges.at(e);
        out.push_back(project_mod(flag_dir(c.ctype, v, e), c.positions.at(v)));
    }
    return out;
}

}  // namespace coral
