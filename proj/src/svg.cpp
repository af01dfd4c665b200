#include "coral/svg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace coral {

namespace {

// Fixed-point decimal with three digits, computed exactly.
std::string fmt(const Rat& r) {
    Int scaled = rat_floor(r * 1000 + Rat(1, 2));
    bool negative = scaled < 0;
    Int a = abs(scaled);
    Int whole = a / 1000, frac = a % 1000;
    std::ostringstream os;
    if (negative && (whole != 0 || frac != 0)) os << "-";
    os << whole.str();
    if (frac != 0) {
        std::string f = frac.str();
        while (f.size() < 3) f = "0" + f;
        while (!f.empty() && f.back() == '0') f.pop_back();
        os << "." << f;
    }
    return os.str();
}

struct Canvas {
    Viewport vp;
    Rat scale = 40;
    Rat margin = 20;
    std::ostringstream body;

    Rat sx(const Rat& x) const { return (x - vp.xmin) * scale + margin; }
    Rat sy(const Rat& y) const { return (vp.ymax - y) * scale + margin; }

    void line(const RationalPoint& a, const RationalPoint& b, const std::string& style) {
        body << "  <line x1=\"" << fmt(sx(a(0))) << "\" y1=\"" << fmt(sy(a(1))) << "\" x2=\""
             << fmt(sx(b(0))) << "\" y2=\"" << fmt(sy(b(1))) << "\" " << style << "/>\n";
    }
    void dot(const RationalPoint& a, const std::string& fill) {
        body << "  <circle cx=\"" << fmt(sx(a(0))) << "\" cy=\"" << fmt(sy(a(1)))
             << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
    }
    void text(const RationalPoint& a, const std::string& s) {
        body << "  <text x=\"" << fmt(sx(a(0)) + 4) << "\" y=\"" << fmt(sy(a(1)) - 4)
             << "\" font-size=\"11\" font-family=\"sans-serif\">" << s << "</text>\n";
    }
    std::string finish() const {
        Rat w = (vp.xmax - vp.xmin) * scale + margin * 2;
        Rat h = (vp.ymax - vp.ymin) * scale + margin * 2;
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w)
           << "\" height=\"" << fmt(h) << "\">\n"
           << body.str() << "</svg>\n";
        return os.str();
    }
};

const char* kSolid = "stroke=\"black\" stroke-width=\"1.5\"";
const char* kDashed = "stroke=\"black\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"";
const char* kBoundary = "stroke=\"gray\" stroke-width=\"0.8\" stroke-dasharray=\"2 3\"";

// Largest t with p + t*u inside the viewport; zero when it exits immediately.
Rat ray_exit(const Viewport& vp, const RationalPoint& p, const LatticeVector& u) {
    Rat best = -1;
    bool bounded = false;
    auto cut = [&](const Rat& coord, const Rat& speed, const Rat& lo, const Rat& hi) {
        if (speed == 0) return;
        Rat t = speed > 0 ? (hi - coord) / speed : (lo - coord) / speed;
        if (!bounded || t < best) {
            best = t;
            bounded = true;
        }
    };
    cut(p(0), Rat(u(0)), vp.xmin, vp.xmax);
    cut(p(1), Rat(u(1)), vp.ymin, vp.ymax);
    if (!bounded || best < 0) return 0;
    return best;
}

Viewport fit(const std::vector<RationalPoint>& pts) {
    Viewport vp{pts.front()(0), pts.front()(1), pts.front()(0), pts.front()(1)};
    for (const auto& p : pts) {
        vp.xmin = std::min(vp.xmin, p(0));
        vp.xmax = std::max(vp.xmax, p(0));
        vp.ymin = std::min(vp.ymin, p(1));
        vp.ymax = std::max(vp.ymax, p(1));
    }
    vp.xmin -= 2;
    vp.xmax += 2;
    vp.ymin -= 2;
    vp.ymax += 2;
    return vp;
}

RationalPoint along(const RationalPoint& p, const LatticeVector& u, const Rat& t) {
    return rpoint(p(0) + Rat(u(0)) * t, p(1) + Rat(u(1)) * t);
}

void weight_label(Canvas& cv, const RationalPoint& a, const RationalPoint& b, const Int& w) {
    if (w <= 1) return;
    RationalPoint mid = rpoint((a(0) + b(0)) / 2, (a(1) + b(1)) / 2);
    cv.text(mid, w.str());
}

}  // namespace

std::string render_coral_svg(const TropicalCoral& c, std::optional<Viewport> vp) {
    std::vector<RationalPoint> pts;
    for (const auto& [v, p] : c.positions) pts.push_back(p);
    pts.push_back(rpoint(0, 0));
    Canvas cv;
    cv.vp = vp ? *vp : fit(pts);

    // boundary of the truncated cone
    cv.line(rpoint(cv.vp.xmin, 1), rpoint(cv.vp.xmax, 1), kBoundary);

    for (const auto& [e, vw] : c.ctype.graph.bounded_edges) {
        const RationalPoint& a = c.positions.at(vw.first);
        const RationalPoint& b = c.positions.at(vw.second);
        cv.line(a, b, kSolid);
        weight_label(cv, a, b, c.ctype.graph.weights.at(e));
    }
    for (const auto& [e, v] : c.ctype.graph.positive_edges) {
        const RationalPoint& a = c.positions.at(v);
        const LatticeVector& u = flag_dir(c.ctype, v, e);
        Rat t = ray_exit(cv.vp, a, u);
        if (t > 0) {
            RationalPoint b = along(a, u, t);
            cv.line(a, b, kSolid);
            weight_label(cv, a, b, c.ctype.graph.weights.at(e));
        }
    }
    for (const auto& [v, cls] : c.ctype.graph.vertices)
        cv.dot(c.positions.at(v), cls == VertexClass::Negative ? "white" : "black");
    return cv.finish();
}

std::string render_curve_svg(const TropicalCurve& tc, std::optional<Viewport> vp) {
    std::vector<RationalPoint> pts;
    for (const auto& [v, p] : tc.positions) pts.push_back(p);
    pts.push_back(rpoint(0, 0));
    Canvas cv;
    cv.vp = vp ? *vp : fit(pts);

    cv.line(rpoint(cv.vp.xmin, 1), rpoint(cv.vp.xmax, 1), kBoundary);
    for (const auto& [e, vw] : tc.bounded_edges) {
        const RationalPoint& a = tc.positions.at(vw.first);
        const RationalPoint& b = tc.positions.at(vw.second);
        cv.line(a, b, kSolid);
        weight_label(cv, a, b, tc.weights.at(e));
    }
    for (const auto& [e, v] : tc.ends) {
        const RationalPoint& a = tc.positions.at(v);
        const LatticeVector& u = tc.end_dirs.at(e);
        Rat t = ray_exit(cv.vp, a, u);
        if (t > 0) {
            RationalPoint b = along(a, u, t);
            bool extension = tc.end_kind.at(e) != EndKind::Positive;
            cv.line(a, b, extension ? kDashed : kSolid);
            weight_label(cv, a, b, tc.weights.at(e));
        }
    }
    for (const auto& [v, p] : tc.positions) cv.dot(p, "black");
    return cv.finish();
}

std::string render_tmt_svg(const MorseTree& m) {
    std::vector<RationalPoint> pts;
    for (const auto& [v, p] : m.phi) pts.push_back(rpoint(p, 0));
    Canvas cv;
    cv.vp = fit(pts);
    cv.vp.ymin = -3;
    cv.vp.ymax = 3;

    cv.line(rpoint(cv.vp.xmin, 0), rpoint(cv.vp.xmax, 0), kBoundary);

    // Edges as arcs above the axis, nesting height by tree depth.
    std::map<int, int> depth;
    std::function<int(int, int)> assign = [&](int v, int parent) -> int {
        int d = 0;
        for (int w : m.adjacency.at(v))
            if (w != parent) d = std::max(d, assign(w, v) + 1);
        depth[v] = d;
        return d;
    };
    assign(m.root, -1);
    for (const auto& [v, nbrs] : m.adjacency) {
        for (int w : nbrs) {
            if (w < v) continue;
            Rat ha = Rat(depth.at(v), 2), hb = Rat(depth.at(w), 2);
            cv.line(rpoint(m.phi.at(v), ha), rpoint(m.phi.at(w), hb), kSolid);
        }
    }

    // Externals labelled p_{i,i+1} by their adjacent regions when the tree
    // validates; plain ids otherwise.
    std::map<int, std::string> label;
    auto [report, prof] = validate_tmt(m);
    if (prof) {
        int d = static_cast<int>(prof->contour.size());
        for (int i = 0; i < d; ++i)
            label[prof->contour[i]] = "p_" + std::to_string(i) + std::to_string(i + 1);
        label[m.root] = "p_" + std::to_string(d) + "0";
    }
    for (const auto& [v, nbrs] : m.adjacency) {
        RationalPoint p = rpoint(m.phi.at(v), Rat(depth.at(v), 2));
        cv.dot(p, nbrs.size() == 1 ? "white" : "black");
        if (nbrs.size() == 1) {
            std::string name = label.count(v) ? label.at(v) : "v" + std::to_string(v);
            cv.text(p, name + "=" + format_rational(m.phi.at(v)));
        }
    }
    return cv.finish();
}

}  // namespace coral
