#include "coral/coral.hpp"

#include <algorithm>
#include <sstream>

namespace coral {

bool operator==(const CoralType& a, const CoralType& b) {
    auto veq = [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return false;
        auto it = y.begin();
        for (const auto& [k, v] : x) {
            if (it->first != k || !eq(it->second, v)) return false;
            ++it;
        }
        return true;
    };
    return a.graph == b.graph && veq(a.flag_dirs, b.flag_dirs) && veq(a.negvert_dirs, b.negvert_dirs) &&
           a.negvert_weights == b.negvert_weights;
}

bool operator==(const TropicalCoral& a, const TropicalCoral& b) {
    if (!(a.ctype == b.ctype) || a.positions.size() != b.positions.size()) return false;
    auto it = b.positions.begin();
    for (const auto& [k, p] : a.positions) {
        if (it->first != k || !eq(it->second, p)) return false;
        ++it;
    }
    return true;
}

bool operator==(const Degree& a, const Degree& b) {
    auto veq = [](const std::vector<LatticeVector>& x, const std::vector<LatticeVector>& y) {
        if (x.size() != y.size()) return false;
        for (size_t i = 0; i < x.size(); ++i)
            if (!eq(x[i], y[i])) return false;
        return true;
    };
    return veq(a.positive, b.positive) && veq(a.negative, b.negative);
}

bool same_degree(const Degree& a, const Degree& b) {
    auto sorted = [](std::vector<LatticeVector> v) {
        std::sort(v.begin(), v.end(), [](const LatticeVector& x, const LatticeVector& y) { return lex_less(x, y); });
        return v;
    };
    Degree as{sorted(a.positive), sorted(a.negative)};
    Degree bs{sorted(b.positive), sorted(b.negative)};
    return as == bs;
}

RationalPoint forced_negative_position(const LatticeVector& u) {
    if (u(1) >= 0) throw Error(Errc::InvalidCoral, "negative direction must have negative height");
    // (a,b)/b = (a/b, 1); the direction from that point to the origin is a
    // positive multiple of u since b < 0.
    return rpoint(Rat(u(0), u(1)), Rat(1));
}

const LatticeVector& flag_dir(const CoralType& t, int v, int e) {
    auto it = t.flag_dirs.find(Flag{v, e});
    if (it == t.flag_dirs.end()) throw Error(Errc::InvalidCoral, "missing flag direction");
    return it->second;
}

namespace {

/// Primitive integral direction of a nonzero rational vector.
LatticeVector primitive_direction(const RationalPoint& d) {
    if (d(0) == 0 && d(1) == 0) throw Error(Errc::ZeroVector, "primitive_direction: zero vector");
    Int l = boost::multiprecision::lcm(denominator(d(0)), denominator(d(1)));
    LatticeVector v = lvec(numerator(d(0) * l), numerator(d(1) * l));
    return primitive(v).first;
}

struct FlagInfo {
    int edge;
    LatticeVector dir;
    Int weight;
};

std::vector<FlagInfo> incident_flags(const CoralType& t, int v) {
    std::vector<FlagInfo> out;
    for (int e : incident_edges(t.graph, v)) {
        auto it = t.flag_dirs.find(Flag{v, e});
        LatticeVector d = it == t.flag_dirs.end() ? lvec(0, 0) : it->second;
        out.push_back({e, d, t.graph.weights.at(e)});
    }
    return out;
}

}  // namespace

std::vector<std::string> validate_coral(const TropicalCoral& c) {
    std::vector<std::string> report = validate_graph(c.ctype.graph);
    if (!report.empty()) return report;
    auto bad = [&](const std::string& msg) { report.push_back(msg); };
    const CoralGraph& g = c.ctype.graph;

    // Type data must be complete and primitive.
    for (const auto& [e, v] : g.positive_edges)
        if (!c.ctype.flag_dirs.count(Flag{v, e})) bad("missing flag for positive edge " + std::to_string(e));
    for (const auto& [e, vw] : g.bounded_edges) {
        if (!c.ctype.flag_dirs.count(Flag{vw.first, e}) || !c.ctype.flag_dirs.count(Flag{vw.second, e})) {
            bad("missing flag for bounded edge " + std::to_string(e));
        }
    }
    for (const auto& [f, d] : c.ctype.flag_dirs) {
        if (is_zero(d)) bad("zero flag direction on edge " + std::to_string(f.edge));
        else if (!is_primitive(d)) bad("non-primitive flag direction on edge " + std::to_string(f.edge));
    }
    if (!report.empty()) return report;

    for (const auto& [e, vw] : g.bounded_edges) {
        if (!eq(flag_dir(c.ctype, vw.first, e), LatticeVector(-flag_dir(c.ctype, vw.second, e))))
            bad("opposite-flag condition fails on bounded edge " + std::to_string(e));
    }

    for (const auto& [v, cls] : g.vertices) {
        if (cls != VertexClass::Negative) continue;
        if (!c.ctype.negvert_dirs.count(v)) bad("missing direction at negative vertex " + std::to_string(v));
        else {
            const LatticeVector& u = c.ctype.negvert_dirs.at(v);
            if (!is_primitive(u)) bad("non-primitive direction at negative vertex " + std::to_string(v));
            else if (u(1) >= 0) bad("direction at negative vertex " + std::to_string(v) + " does not point down");
        }
        if (!c.ctype.negvert_weights.count(v)) bad("missing weight at negative vertex " + std::to_string(v));
        else if (c.ctype.negvert_weights.at(v) < 1) bad("weight at negative vertex " + std::to_string(v) + " not positive");
    }
    for (const auto& [v, p] : c.positions) {
        if (!g.vertices.count(v)) bad("position for unknown vertex " + std::to_string(v));
    }
    for (const auto& [v, cls] : g.vertices)
        if (!c.positions.count(v)) bad("missing position for vertex " + std::to_string(v));
    if (!report.empty()) return report;

    // Heights: interior strictly above the boundary, negative on it.
    for (const auto& [v, cls] : g.vertices) {
        const RationalPoint& p = c.positions.at(v);
        if (cls == VertexClass::Interior && !(p(1) > 1))
            bad("interior vertex " + std::to_string(v) + " not above height 1");
        if (cls == VertexClass::Negative) {
            if (p(1) != 1) bad("negative vertex " + std::to_string(v) + " not at height 1");
            else if (c.ctype.negvert_dirs.count(v)) {
                RationalPoint forced = forced_negative_position(c.ctype.negvert_dirs.at(v));
                if (!eq(p, forced)) bad("negative vertex " + std::to_string(v) + " not at its forced position");
            }
        }
    }

    // Edge geometry: displacement is a positive multiple of the flag direction.
    for (const auto& [e, vw] : g.bounded_edges) {
        RationalPoint d = c.positions.at(vw.second) - c.positions.at(vw.first);
        if (d(0) == 0 && d(1) == 0) {
            bad("bounded edge " + std::to_string(e) + " has zero length");
            continue;
        }
        const LatticeVector& u = flag_dir(c.ctype, vw.first, e);
        // d = t*u with t > 0, exactly.
        Rat t = u(0) != 0 ? d(0) / Rat(u(0)) : d(1) / Rat(u(1));
        if (!(t > 0) || d(0) != t * Rat(u(0)) || d(1) != t * Rat(u(1)))
            bad("bounded edge " + std::to_string(e) + " not aligned with its flag direction");
    }

    // Properness: positive ends go up.
    for (const auto& [e, v] : g.positive_edges) {
        if (!(flag_dir(c.ctype, v, e)(1) > 0)) bad("positive edge " + std::to_string(e) + " has non-positive height direction");
    }

    // Balancing.
    for (const auto& [v, cls] : g.vertices) {
        LatticeVector sum = lvec(0, 0);
        for (const auto& f : incident_flags(c.ctype, v)) sum += LatticeVector(f.dir * f.weight);
        if (cls == VertexClass::Interior) {
            if (!is_zero(sum)) bad("interior balancing fails at vertex " + std::to_string(v));
        } else {
            // w_v * u_v must cancel the edge contributions, w_v a positive integer.
            LatticeVector need = -sum;
            if (is_zero(need)) {
                bad("negative balancing fails at vertex " + std::to_string(v) + " (no ray needed)");
                continue;
            }
            auto [u, gr] = primitive(need);
            if (!eq(u, c.ctype.negvert_dirs.at(v)) || gr != c.ctype.negvert_weights.at(v))
                bad("negative balancing fails at vertex " + std::to_string(v));
        }
    }

    // Embedding germs: distinct directions of distinct edges at each vertex.
    for (const auto& [v, cls] : g.vertices) {
        auto flags = incident_flags(c.ctype, v);
        for (size_t i = 0; i < flags.size(); ++i)
            for (size_t j = i + 1; j < flags.size(); ++j)
                if (eq(flags[i].dir, flags[j].dir))
                    bad("coincident germ directions at vertex " + std::to_string(v));
    }

    return report;
}

CoralType type_of(const TropicalCoral& c) {
    auto report = validate_coral(c);
    if (!report.empty()) throw Error(Errc::InvalidCoral, "type_of: " + report.front());

    CoralType t;
    t.graph = c.ctype.graph;
    for (const auto& [e, v] : t.graph.positive_edges) t.flag_dirs[Flag{v, e}] = flag_dir(c.ctype, v, e);
    for (const auto& [e, vw] : t.graph.bounded_edges) {
        LatticeVector u = primitive_direction(c.positions.at(vw.second) - c.positions.at(vw.first));
        t.flag_dirs[Flag{vw.first, e}] = u;
        t.flag_dirs[Flag{vw.second, e}] = -u;
    }
    for (const auto& [v, cls] : t.graph.vertices) {
        if (cls != VertexClass::Negative) continue;
        t.negvert_dirs[v] = primitive_direction(-c.positions.at(v));
        LatticeVector sum = lvec(0, 0);
        for (int e : incident_edges(t.graph, v)) sum += LatticeVector(t.flag_dirs.at(Flag{v, e}) * t.graph.weights.at(e));
        t.negvert_weights[v] = primitive(LatticeVector(-sum)).second;
    }
    return t;
}

Degree degree_of(const CoralType& t) {
    Degree d;
    for (int e : t.graph.labels) {
        int v = t.graph.positive_edges.at(e);
        d.positive.push_back(flag_dir(t, v, e) * t.graph.weights.at(e));
    }
    for (const auto& [v, u] : t.negvert_dirs) d.negative.push_back(u * t.negvert_weights.at(v));
    return d;
}

bool is_general(const CoralType& t) {
    for (const auto& [v, cls] : t.graph.vertices) {
        int val = valency(t.graph, v);
        if (cls == VertexClass::Interior && val != 3) return false;
        if (cls == VertexClass::Negative && val != 1) return false;
    }
    return true;
}

bool is_general(const TropicalCoral& c) { return is_general(c.ctype); }

TropicalCoral rescale(const TropicalCoral& c, const Rat& s) {
    if (s < 1) throw Error(Errc::BadScale, "rescale: s must be >= 1");
    TropicalCoral out = c;
    for (auto& [v, p] : out.positions) {
        if (c.ctype.graph.vertices.at(v) == VertexClass::Negative) continue;  // stays on its ray at height 1
        p = rpoint(p(0) * s, p(1) * s);
    }
    return out;
}

namespace {

struct SigContext {
    const CoralType* type;
    const std::map<int, RationalPoint>* positions;  // null for bare types
    std::map<int, int> label_pos;                   // positive edge -> index in labels
    std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (edge, other or -1)
};

SigContext make_context(const CoralType& t, const std::map<int, RationalPoint>* pos) {
    SigContext ctx;
    ctx.type = &t;
    ctx.positions = pos;
    for (size_t i = 0; i < t.graph.labels.size(); ++i) ctx.label_pos[t.graph.labels[i]] = static_cast<int>(i);
    for (const auto& [e, v] : t.graph.positive_edges) ctx.adj[v].push_back({e, -1});
    for (const auto& [e, vw] : t.graph.bounded_edges) {
        ctx.adj[vw.first].push_back({e, vw.second});
        ctx.adj[vw.second].push_back({e, vw.first});
    }
    return ctx;
}

std::string dir_str(const LatticeVector& v) { return v(0).str() + "," + v(1).str(); }

std::string vertex_head(const SigContext& ctx, int v) {
    const CoralType& t = *ctx.type;
    std::string s = t.graph.vertices.at(v) == VertexClass::Negative ? "N" : "I";
    if (t.graph.vertices.at(v) == VertexClass::Negative) {
        auto itd = t.negvert_dirs.find(v);
        auto itw = t.negvert_weights.find(v);
        if (itd != t.negvert_dirs.end()) s += "[" + dir_str(itd->second) + "]";
        if (itw != t.negvert_weights.end()) s += "w" + itw->second.str();
    }
    if (ctx.positions) {
        const RationalPoint& p = ctx.positions->at(v);
        s += "@" + format_rational(p(0)) + ";" + format_rational(p(1));
    }
    return s;
}

std::string item_string(const SigContext& ctx, int v, int e, int other);

std::string vertex_signature(const SigContext& ctx, int v, int parent_edge) {
    std::vector<std::string> items;
    for (const auto& [e, other] : ctx.adj.at(v)) {
        if (e == parent_edge) continue;
        items.push_back(item_string(ctx, v, e, other));
    }
    std::sort(items.begin(), items.end());
    std::string s = vertex_head(ctx, v) + "(";
    for (const auto& it : items) s += it;
    return s + ")";
}

std::string item_string(const SigContext& ctx, int v, int e, int other) {
    const CoralType& t = *ctx.type;
    auto itd = t.flag_dirs.find(Flag{v, e});
    std::string d = itd == t.flag_dirs.end() ? "?" : dir_str(itd->second);
    std::string w = t.graph.weights.count(e) ? t.graph.weights.at(e).str() : "?";
    if (other < 0) {
        auto itl = ctx.label_pos.find(e);
        std::string lab = itl == ctx.label_pos.end() ? "?" : std::to_string(itl->second);
        return "P[" + d + "|" + w + "|" + lab + "]";
    }
    return "B[" + d + "|" + w + "]" + vertex_signature(ctx, other, e);
}

struct Relabel {
    std::map<int, int> vertex;
    std::map<int, int> edge;
};

void relabel_walk(const SigContext& ctx, int v, int parent_edge, Relabel& r, int& next_v, int& next_e) {
    r.vertex[v] = next_v++;
    std::vector<std::pair<std::string, std::pair<int, int>>> items;
    for (const auto& [e, other] : ctx.adj.at(v)) {
        if (e == parent_edge) continue;
        items.push_back({item_string(ctx, v, e, other), {e, other}});
    }
    std::sort(items.begin(), items.end());
    for (const auto& [sig, eo] : items) {
        r.edge[eo.first] = next_e++;
        if (eo.second >= 0) relabel_walk(ctx, eo.second, eo.first, r, next_v, next_e);
    }
}

CoralType apply_relabel_type(const CoralType& t, const Relabel& r) {
    CoralType out;
    for (const auto& [v, cls] : t.graph.vertices) out.graph.vertices[r.vertex.at(v)] = cls;
    for (const auto& [e, v] : t.graph.positive_edges) out.graph.positive_edges[r.edge.at(e)] = r.vertex.at(v);
    for (const auto& [e, vw] : t.graph.bounded_edges) {
        int a = r.vertex.at(vw.first), b = r.vertex.at(vw.second);
        out.graph.bounded_edges[r.edge.at(e)] = {std::min(a, b), std::max(a, b)};
    }
    for (const auto& [e, w] : t.graph.weights) out.graph.weights[r.edge.at(e)] = w;
    for (int e : t.graph.labels) out.graph.labels.push_back(r.edge.at(e));
    for (const auto& [f, d] : t.flag_dirs) out.flag_dirs[Flag{r.vertex.at(f.vertex), r.edge.at(f.edge)}] = d;
    for (const auto& [v, d] : t.negvert_dirs) out.negvert_dirs[r.vertex.at(v)] = d;
    for (const auto& [v, w] : t.negvert_weights) out.negvert_weights[r.vertex.at(v)] = w;
    return out;
}

Relabel canonical_relabel(const SigContext& ctx) {
    int best = -1;
    std::string best_sig;
    for (const auto& [v, cls] : ctx.type->graph.vertices) {
        std::string s = vertex_signature(ctx, v, -1);
        if (best < 0 || s < best_sig) {
            best = v;
            best_sig = s;
        }
    }
    Relabel r;
    int nv = 0, ne = 0;
    relabel_walk(ctx, best, -1, r, nv, ne);
    return r;
}

}  // namespace

TropicalCoral canonical_form(const TropicalCoral& c) {
    SigContext ctx = make_context(c.ctype, &c.positions);
    Relabel r = canonical_relabel(ctx);
    TropicalCoral out;
    out.ctype = apply_relabel_type(c.ctype, r);
    for (const auto& [v, p] : c.positions) out.positions[r.vertex.at(v)] = p;
    return out;
}

CoralType canonical_type(const CoralType& t) {
    SigContext ctx = make_context(t, nullptr);
    Relabel r = canonical_relabel(ctx);
    return apply_relabel_type(t, r);
}

std::string type_signature(const CoralType& t) {
    SigContext ctx = make_context(t, nullptr);
    int best = -1;
    std::string best_sig;
    for (const auto& [v, cls] : t.graph.vertices) {
        std::string s = vertex_signature(ctx, v, -1);
        if (best < 0 || s < best_sig) {
            best = v;
            best_sig = s;
        }
    }
    return best_sig;
}

}  // namespace coral
