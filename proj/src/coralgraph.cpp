#include "coral/coralgraph.hpp"

#include <algorithm>
#include <deque>

namespace coral {

bool operator==(const CoralGraph& a, const CoralGraph& b) {
    return a.vertices == b.vertices && a.positive_edges == b.positive_edges &&
           a.bounded_edges == b.bounded_edges && a.weights == b.weights && a.labels == b.labels;
}

int valency(const CoralGraph& g, int vertex) {
    int n = 0;
    for (const auto& [e, v] : g.positive_edges)
        if (v == vertex) ++n;
    for (const auto& [e, vw] : g.bounded_edges) {
        if (vw.first == vertex) ++n;
        if (vw.second == vertex) ++n;
    }
    return n;
}

std::vector<int> incident_edges(const CoralGraph& g, int vertex) {
    std::vector<int> out;
    for (const auto& [e, v] : g.positive_edges)
        if (v == vertex) out.push_back(e);
    for (const auto& [e, vw] : g.bounded_edges)
        if (vw.first == vertex || vw.second == vertex) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> validate_graph(const CoralGraph& g) {
    std::vector<std::string> report;
    auto bad = [&](const std::string& msg) { report.push_back(msg); };

    if (g.vertices.empty()) {
        bad("empty graph");
        return report;
    }

    // Id sanity.
    for (const auto& [e, v] : g.positive_edges) {
        if (g.bounded_edges.count(e)) bad("edge id " + std::to_string(e) + " is both positive and bounded");
        if (!g.vertices.count(v)) bad("positive edge " + std::to_string(e) + " has unknown endpoint");
    }
    for (const auto& [e, vw] : g.bounded_edges) {
        if (!g.vertices.count(vw.first) || !g.vertices.count(vw.second))
            bad("bounded edge " + std::to_string(e) + " has unknown endpoint");
        if (vw.first == vw.second) bad("bounded edge " + std::to_string(e) + " is a loop");
    }
    for (const auto& [e, w] : g.weights)
        if (w < 1) bad("weight of edge " + std::to_string(e) + " is not positive");
    for (const auto& [e, v] : g.positive_edges)
        if (!g.weights.count(e)) bad("positive edge " + std::to_string(e) + " has no weight");
    for (const auto& [e, vw] : g.bounded_edges)
        if (!g.weights.count(e)) bad("bounded edge " + std::to_string(e) + " has no weight");

    // Labels must order the positive edges.
    {
        std::set<int> seen;
        for (int e : g.labels) {
            if (!g.positive_edges.count(e)) bad("label " + std::to_string(e) + " is not a positive edge");
            if (!seen.insert(e).second) bad("label " + std::to_string(e) + " repeated");
        }
        if (seen.size() != g.positive_edges.size()) bad("labels do not cover all positive edges");
    }

    int l = static_cast<int>(g.positive_edges.size());
    int m = 0;
    for (const auto& [v, c] : g.vertices)
        if (c == VertexClass::Negative) ++m;
    if (l < 1) bad("no positive edges");
    if (m < 1) bad("no negative vertices");

    // Valency conditions.
    for (const auto& [v, c] : g.vertices) {
        int val = valency(g, v);
        if (val == 0) bad("isolated vertex " + std::to_string(v));
        if (c == VertexClass::Interior) {
            if (val == 1) bad("univalent interior vertex " + std::to_string(v));
            if (val == 2) bad("divalent vertex " + std::to_string(v));
        }
    }

    // Tree condition: Betti number zero and connected. Positive half-edges do
    // not affect either.
    if (!report.empty()) return report;  // adjacency below assumes consistent ids
    {
        std::map<int, std::vector<int>> adj;
        for (const auto& [e, vw] : g.bounded_edges) {
            adj[vw.first].push_back(vw.second);
            adj[vw.second].push_back(vw.first);
        }
        std::set<int> seen;
        std::deque<int> queue{g.vertices.begin()->first};
        seen.insert(g.vertices.begin()->first);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v])
                if (seen.insert(w).second) queue.push_back(w);
        }
        if (seen.size() != g.vertices.size()) bad("graph not connected");
        if (g.bounded_edges.size() + 1 != g.vertices.size()) bad("Betti number nonzero");
    }

    return report;
}

ExtendedGraph extend_graph(const CoralGraph& g, const std::map<int, Int>* negvert_weights) {
    auto report = validate_graph(g);
    if (!report.empty()) throw Error(Errc::InvalidGraph, "extend_graph: " + report.front());

    ExtendedGraph x;
    x.weights = g.weights;
    x.labels = g.labels;
    for (const auto& [e, v] : g.positive_edges) {
        x.ends[e] = v;
        x.end_kind[e] = EndKind::Positive;
    }

    int next_id = 0;
    for (const auto& [e, v] : g.positive_edges) next_id = std::max(next_id, e + 1);
    for (const auto& [e, vw] : g.bounded_edges) next_id = std::max(next_id, e + 1);

    std::set<int> removed;
    for (const auto& [v, c] : g.vertices) {
        if (c == VertexClass::Negative && valency(g, v) == 1) removed.insert(v);
    }

    for (const auto& [v, c] : g.vertices)
        if (!removed.count(v)) x.vertices[v] = c;

    for (const auto& [e, vw] : g.bounded_edges) {
        bool rf = removed.count(vw.first), rs = removed.count(vw.second);
        if (rf && rs) throw Error(Errc::InvalidGraph, "extend_graph: edge joins two univalent negative vertices");
        if (!rf && !rs) {
            x.bounded_edges[e] = vw;
        } else {
            // The edge keeps its id and weight, anchored at the surviving end.
            x.ends[e] = rf ? vw.second : vw.first;
            x.end_kind[e] = EndKind::NegativeFromUnivalent;
        }
    }

    // Surviving negative vertices (valency > 1) gain a half-edge of weight w_v.
    for (const auto& [v, c] : x.vertices) {
        if (c != VertexClass::Negative) continue;
        int e = next_id++;
        x.ends[e] = v;
        x.end_kind[e] = EndKind::NegativeInserted;
        Int w = 1;
        if (negvert_weights) {
            auto it = negvert_weights->find(v);
            if (it != negvert_weights->end()) w = it->second;
        }
        x.weights[e] = w;
    }

    return x;
}

}  // namespace coral
