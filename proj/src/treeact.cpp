#include "anosov/treeact.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace anosov {

bool FiniteGraph::is_connected() const {
    if (vertices.empty())
        return true;
    std::map<int, std::vector<int>> adj;
    for (int v : vertices)
        adj[v];
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen{vertices.front()};
    std::vector<int> stack{vertices.front()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (seen.insert(w).second)
                stack.push_back(w);
    }
    return seen.size() == adj.size();
}

int edge_source(const FiniteGraph& g, DirectedEdge e) {
    auto [a, b] = g.edges.at(e.edge);
    return e.reversed ? b : a;
}

int edge_target(const FiniteGraph& g, DirectedEdge e) {
    auto [a, b] = g.edges.at(e.edge);
    return e.reversed ? a : b;
}

void check_walk(const FiniteGraph& g, const TreeWalk& w) {
    if (std::find(g.vertices.begin(), g.vertices.end(), w.base_vertex) == g.vertices.end())
        throw InvalidWalk("base vertex is not in the graph");
    for (auto [a, b] : g.edges)
        if (std::find(g.vertices.begin(), g.vertices.end(), a) == g.vertices.end() ||
            std::find(g.vertices.begin(), g.vertices.end(), b) == g.vertices.end())
            throw InvalidWalk("graph edge refers to a missing vertex");
    if (!g.is_connected())
        throw PreconditionViolated("graph must be connected");
    int at = w.base_vertex;
    for (const auto& e : w.edge_sequence) {
        if (e.edge < 0 || e.edge >= static_cast<int>(g.edges.size()))
            throw InvalidWalk("walk uses a missing edge");
        if (edge_source(g, e) != at)
            throw InvalidWalk("walk edges are not consecutive-incident");
        at = edge_target(g, e);
    }
    if (at != w.base_vertex)
        throw InvalidWalk("walk does not return to its base vertex");
}

TreeWalk reduce_walk(const FiniteGraph& g, const TreeWalk& w) {
    check_walk(g, w);
    std::vector<DirectedEdge> r;
    for (const auto& e : w.edge_sequence) {
        if (!r.empty() && r.back() == e.inverse())
            r.pop_back();
        else
            r.push_back(e);
    }
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    TreeWalk out;
    out.edge_sequence.assign(r.begin() + lo, r.begin() + hi);
    out.base_vertex = out.edge_sequence.empty() ? w.base_vertex : edge_source(g, out.edge_sequence.front());
    return out;
}

WalkClassification classify_walk(const FiniteGraph& g, const TreeWalk& w) {
    WalkClassification c;
    c.axis = reduce_walk(g, w);
    c.length = static_cast<int>(c.axis.edge_sequence.size());
    c.kind = c.length == 0 ? TreeActionKind::elliptic : TreeActionKind::translation;
    return c;
}

TreeWalk walk_power(const TreeWalk& w, int k) {
    TreeWalk r{w.base_vertex, {}};
    for (int i = 0; i < k; ++i)
        r.edge_sequence.insert(r.edge_sequence.end(), w.edge_sequence.begin(), w.edge_sequence.end());
    return r;
}

TreeWalk rebase_walk(const FiniteGraph& g, const TreeWalk& w, std::size_t start) {
    if (w.edge_sequence.empty())
        return w;
    start %= w.edge_sequence.size();
    TreeWalk r;
    r.base_vertex = edge_source(g, w.edge_sequence[start]);
    r.edge_sequence.assign(w.edge_sequence.begin() + start, w.edge_sequence.end());
    r.edge_sequence.insert(r.edge_sequence.end(), w.edge_sequence.begin(), w.edge_sequence.begin() + start);
    return r;
}

} // namespace anosov
