#include "coral/io.hpp"

#include <fstream>
#include <sstream>

namespace coral {

namespace {

Json vec_json(const LatticeVector& v) { return Json::array({v(0).str(), v(1).str()}); }

LatticeVector vec_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "expected [a, b] lattice vector");
    auto coord = [](const Json& x) {
        if (x.is_number_integer()) return Int(x.get<long long>());
        if (x.is_string()) return parse_int(x.get<std::string>());
        throw Error(Errc::ParseError, "expected integer coordinate");
    };
    return lvec(coord(j[0]), coord(j[1]));
}

Json rat_json(const Rat& r) { return format_rational(r); }

Rat rat_from(const Json& j) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(Errc::ParseError, "expected rational as \"p/q\" string");
}

Json point_json(const RationalPoint& p) { return Json::array({rat_json(p(0)), rat_json(p(1))}); }

RationalPoint point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "expected [x, h] point");
    return rpoint(rat_from(j[0]), rat_from(j[1]));
}

int int_key(const std::string& s) {
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "expected integer key, got '" + s + "'");
    }
}

const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(Errc::ParseError, std::string("missing key '") + key + "'");
    return *it;
}

}  // namespace

Json to_json(const CoralGraph& g) {
    Json vertices = Json::array();
    for (const auto& [v, cls] : g.vertices)
        vertices.push_back({{"id", v}, {"class", cls == VertexClass::Negative ? "negative" : "interior"}});
    Json pos = Json::array();
    for (const auto& [e, v] : g.positive_edges) pos.push_back({{"id", e}, {"vertex", v}});
    Json bnd = Json::array();
    for (const auto& [e, vw] : g.bounded_edges)
        bnd.push_back({{"id", e}, {"ends", Json::array({vw.first, vw.second})}});
    Json weights = Json::object();
    for (const auto& [e, w] : g.weights) weights[std::to_string(e)] = w.str();
    return Json{{"vertices", vertices},
                {"positive_edges", pos},
                {"bounded_edges", bnd},
                {"weights", weights},
                {"labels", g.labels}};
}

CoralGraph graph_from_json(const Json& j) {
    CoralGraph g;
    for (const auto& v : need(j, "vertices")) {
        std::string cls = need(v, "class").get<std::string>();
        if (cls != "negative" && cls != "interior") throw Error(Errc::ParseError, "vertex class must be interior|negative");
        g.vertices[need(v, "id").get<int>()] = cls == "negative" ? VertexClass::Negative : VertexClass::Interior;
    }
    for (const auto& e : need(j, "positive_edges"))
        g.positive_edges[need(e, "id").get<int>()] = need(e, "vertex").get<int>();
    for (const auto& e : need(j, "bounded_edges")) {
        const Json& ends = need(e, "ends");
        g.bounded_edges[need(e, "id").get<int>()] = {ends.at(0).get<int>(), ends.at(1).get<int>()};
    }
    for (const auto& [k, v] : need(j, "weights").items())
        g.weights[int_key(k)] = v.is_string() ? parse_int(v.get<std::string>()) : Int(v.get<long long>());
    if (j.contains("labels")) {
        for (const auto& e : j["labels"]) g.labels.push_back(e.get<int>());
    } else {
        for (const auto& [e, v] : g.positive_edges) g.labels.push_back(e);
    }
    return g;
}

Json to_json(const CoralType& t) {
    Json flags = Json::array();
    for (const auto& [f, d] : t.flag_dirs)
        flags.push_back({{"vertex", f.vertex}, {"edge", f.edge}, {"dir", vec_json(d)}});
    Json neg = Json::array();
    for (const auto& [v, d] : t.negvert_dirs)
        neg.push_back({{"vertex", v}, {"dir", vec_json(d)}, {"weight", t.negvert_weights.at(v).str()}});
    return Json{{"graph", to_json(t.graph)}, {"directions", Json{{"flags", flags}, {"negative", neg}}}};
}

CoralType type_from_json(const Json& j) {
    CoralType t;
    t.graph = graph_from_json(need(j, "graph"));
    const Json& dirs = need(j, "directions");
    for (const auto& f : need(dirs, "flags"))
        t.flag_dirs[Flag{need(f, "vertex").get<int>(), need(f, "edge").get<int>()}] = vec_from(need(f, "dir"));
    for (const auto& n : need(dirs, "negative")) {
        int v = need(n, "vertex").get<int>();
        t.negvert_dirs[v] = vec_from(need(n, "dir"));
        const Json& w = need(n, "weight");
        t.negvert_weights[v] = w.is_string() ? parse_int(w.get<std::string>()) : Int(w.get<long long>());
    }
    return t;
}

Json to_json(const TropicalCoral& c) {
    Json j = to_json(c.ctype);
    Json positions = Json::object();
    for (const auto& [v, p] : c.positions) positions[std::to_string(v)] = point_json(p);
    j["positions"] = positions;
    return j;
}

TropicalCoral coral_from_json(const Json& j) {
    TropicalCoral c;
    c.ctype = type_from_json(j);
    for (const auto& [k, v] : need(j, "positions").items()) c.positions[int_key(k)] = point_from(v);
    return c;
}

Json to_json(const Degree& d) {
    Json pos = Json::array(), neg = Json::array();
    for (const auto& v : d.positive) pos.push_back(vec_json(v));
    for (const auto& v : d.negative) neg.push_back(vec_json(v));
    return Json{{"positive", pos}, {"negative", neg}};
}

Degree degree_from_json(const Json& j) {
    Degree d;
    for (const auto& v : need(j, "positive")) d.positive.push_back(vec_from(v));
    for (const auto& v : need(j, "negative")) d.negative.push_back(vec_from(v));
    return d;
}

Json to_json(const Constraint& lam) {
    Json out = Json::array();
    for (const auto& e : lam.entries)
        out.push_back({{"direction", vec_json(e.direction)}, {"value", rat_json(e.value)}});
    return out;
}

Constraint constraint_from_json(const Json& j) {
    Constraint lam;
    if (!j.is_array()) throw Error(Errc::ParseError, "constraint must be a list");
    for (const auto& e : j) {
        QuotientClass q;
        q.direction = vec_from(need(e, "direction"));
        q.value = rat_from(need(e, "value"));
        lam.entries.push_back(std::move(q));
    }
    return lam;
}

Json to_json(const MorseTree& m) {
    Json edges = Json::object();
    for (const auto& [v, nbrs] : m.adjacency) edges[std::to_string(v)] = nbrs;
    Json decoration = Json::array();
    for (const auto& n : m.decoration) decoration.push_back(n.str());
    Json phi = Json::object();
    for (const auto& [v, p] : m.phi) phi[std::to_string(v)] = rat_json(p);
    return Json{{"decoration", decoration}, {"root", m.root}, {"edges", edges}, {"phi", phi}};
}

MorseTree tmt_from_json(const Json& j) {
    MorseTree m;
    for (const auto& n : need(j, "decoration"))
        m.decoration.push_back(n.is_string() ? parse_int(n.get<std::string>()) : Int(n.get<long long>()));
    m.root = need(j, "root").get<int>();
    for (const auto& [k, v] : need(j, "edges").items()) {
        std::vector<int> nbrs;
        for (const auto& w : v) nbrs.push_back(w.get<int>());
        m.adjacency[int_key(k)] = nbrs;
    }
    for (const auto& [k, v] : need(j, "phi").items()) m.phi[int_key(k)] = rat_from(v);
    return m;
}

Json to_json(const TropicalCurve& tc) {
    Json bnd = Json::array();
    for (const auto& [e, vw] : tc.bounded_edges)
        bnd.push_back({{"id", e}, {"ends", Json::array({vw.first, vw.second})}});
    Json ends = Json::array();
    for (const auto& [e, v] : tc.ends) {
        std::string kind = tc.end_kind.at(e) == EndKind::Positive ? "positive"
                           : tc.end_kind.at(e) == EndKind::NegativeFromUnivalent ? "negative"
                                                                                 : "negative_inserted";
        ends.push_back({{"id", e}, {"vertex", v}, {"dir", vec_json(tc.end_dirs.at(e))}, {"kind", kind}});
    }
    Json weights = Json::object();
    for (const auto& [e, w] : tc.weights) weights[std::to_string(e)] = w.str();
    Json positions = Json::object();
    for (const auto& [v, p] : tc.positions) positions[std::to_string(v)] = point_json(p);
    return Json{{"bounded_edges", bnd}, {"ends", ends}, {"weights", weights}, {"positions", positions},
                {"labels", tc.labels}};
}

TropicalCurve curve_from_json(const Json& j) {
    TropicalCurve tc;
    for (const auto& e : need(j, "bounded_edges")) {
        const Json& ends = need(e, "ends");
        tc.bounded_edges[need(e, "id").get<int>()] = {ends.at(0).get<int>(), ends.at(1).get<int>()};
    }
    for (const auto& e : need(j, "ends")) {
        int id = need(e, "id").get<int>();
        tc.ends[id] = need(e, "vertex").get<int>();
        tc.end_dirs[id] = vec_from(need(e, "dir"));
        std::string kind = need(e, "kind").get<std::string>();
        tc.end_kind[id] = kind == "positive" ? EndKind::Positive
                          : kind == "negative" ? EndKind::NegativeFromUnivalent
                                               : EndKind::NegativeInserted;
    }
    for (const auto& [k, v] : need(j, "weights").items())
        tc.weights[int_key(k)] = v.is_string() ? parse_int(v.get<std::string>()) : Int(v.get<long long>());
    for (const auto& [k, v] : need(j, "positions").items()) tc.positions[int_key(k)] = point_from(v);
    if (j.contains("labels"))
        for (const auto& e : j["labels"]) tc.labels.push_back(e.get<int>());
    return tc;
}

Json to_json(const TypeCatalog& cat) {
    Json types = Json::array();
    for (const auto& t : cat.types) types.push_back(to_json(t));
    return Json{{"degree", to_json(cat.degree)}, {"types", types}};
}

Json to_json(const CountResult& r) {
    Json per_type = Json::array();
    for (const auto& tc : r.per_type)
        per_type.push_back({{"type", to_json(tc.type)},
                            {"contribution", rat_json(tc.contribution)},
                            {"realized", tc.realized}});
    return Json{{"total", rat_json(r.total)}, {"per_type", per_type}};
}

Json to_json(const AreaSeries& s) {
    Json coeff = Json::object();
    for (const auto& [a, c] : s.coefficients) coeff[a.str()] = rat_json(c);
    return Json{{"coefficients", coeff}, {"truncation", s.truncation.str()}};
}

Json to_json(const StableRangeCertificate& cert) {
    Json per_type = Json::array();
    for (const auto& r : cert.per_type) {
        Json item{{"type", to_json(r.type)}};
        switch (r.verdict) {
            case RangeVerdict::EmptyForAllS: item["verdict"] = "empty_for_all_s"; break;
            case RangeVerdict::RealizedAtOne: item["verdict"] = "realized_at_s_1"; break;
            case RangeVerdict::RealizedOnlyAfterRescale:
                item["verdict"] = "realized_only_after_rescale";
                item["inf"] = rat_json(r.rescale_inf);
                item["witness"] = rat_json(r.rescale_witness);
                break;
        }
        per_type.push_back(std::move(item));
    }
    return Json{{"stable", cert.stable()}, {"per_type", per_type}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::ParseError, "JSON parse failure in '" + path + "': " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(Errc::ParseError, "write failure on '" + path + "'");
}

}  // namespace coral
