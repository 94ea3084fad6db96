#pragma once

#include <vector>

#include "mcbnc/graph.hpp"

namespace mcbnc {

struct CutResult {
    int value = 0;                    // max-flow = min-cut size
    std::vector<Link> cut_edges;      // sorted; |cut_edges| == value
    std::vector<NodeId> source_side;  // sorted; contains s, excludes t
};

/// Unit-capacity s-t min cut. Each undirected edge acts as two opposing arcs of
/// capacity one; flow is augmented along breadth-first shortest paths with
/// neighbours scanned in id order. The returned cut is the set of edges leaving
/// the residual-reachable side of s, so the result is fully deterministic.
/// Throws InputError when s == t or either is not a node of g.
CutResult min_cut(const UGraph& g, NodeId s, NodeId t);

}  // namespace mcbnc
