#pragma once

#include <utility>
#include <vector>

#include "anosov/error.hpp"

namespace anosov {

struct FiniteGraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges; // multi-edges and loops allowed

    bool is_connected() const;
};

struct DirectedEdge {
    int edge = 0;
    bool reversed = false;

    DirectedEdge inverse() const { return {edge, !reversed}; }
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

int edge_source(const FiniteGraph& g, DirectedEdge e);
int edge_target(const FiniteGraph& g, DirectedEdge e);

struct TreeWalk {
    int base_vertex = 0;
    std::vector<DirectedEdge> edge_sequence;
};

enum class TreeActionKind { elliptic, translation };

struct WalkClassification {
    TreeActionKind kind = TreeActionKind::elliptic;
    int length = 0;
    TreeWalk axis; // cyclically reduced closed walk; empty for elliptic
};

// Throws InvalidWalk when the walk is not a closed walk in g.
void check_walk(const FiniteGraph& g, const TreeWalk& w);
TreeWalk reduce_walk(const FiniteGraph& g, const TreeWalk& w);
WalkClassification classify_walk(const FiniteGraph& g, const TreeWalk& w);

TreeWalk walk_power(const TreeWalk& w, int k);
// The same closed walk read from position `start`.
TreeWalk rebase_walk(const FiniteGraph& g, const TreeWalk& w, std::size_t start);

} // namespace anosov
