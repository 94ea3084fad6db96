#include "mcbnc/maxflow.hpp"

#include <algorithm>
#include <deque>

#include "mcbnc/errors.hpp"

namespace mcbnc {

CutResult min_cut(const UGraph& g, NodeId s, NodeId t) {
    if (!g.nodes().contains(s) || !g.nodes().contains(t)) throw InputError("min_cut terminal not in graph");
    if (s == t) throw InputError("min_cut needs distinct source and sink");

    const std::size_t n = g.num_nodes();
    // flow[v][k] is the net flow along v -> neighbors(v)[k], skew-symmetric.
    std::vector<std::vector<int>> flow(n);
    for (std::size_t v = 0; v < n; ++v) flow[v].assign(g.degree(static_cast<NodeId>(v)), 0);
    auto slot = [&](NodeId a, NodeId b) {
        const auto& nb = g.neighbors(a);
        return static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), b) - nb.begin());
    };

    std::vector<NodeId> pred(n);
    std::vector<char> seen(n);
    auto bfs = [&]() {
        std::fill(seen.begin(), seen.end(), 0);
        std::deque<NodeId> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            NodeId x = queue.front();
            queue.pop_front();
            const auto& nb = g.neighbors(x);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                NodeId y = nb[k];
                if (seen[y] || 1 - flow[x][k] <= 0) continue;
                seen[y] = 1;
                pred[y] = x;
                if (y == t) return true;
                queue.push_back(y);
            }
        }
        return false;
    };

    int value = 0;
    while (bfs()) {
        int bottleneck = 2;
        for (NodeId y = t; y != s; y = pred[y]) bottleneck = std::min(bottleneck, 1 - flow[pred[y]][slot(pred[y], y)]);
        for (NodeId y = t; y != s; y = pred[y]) {
            NodeId x = pred[y];
            flow[x][slot(x, y)] += bottleneck;
            flow[y][slot(y, x)] -= bottleneck;
        }
        value += bottleneck;
    }

    // The last failed search left `seen` marking the residual-reachable side.
    CutResult out;
    out.value = value;
    for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v]) continue;
        out.source_side.push_back(static_cast<NodeId>(v));
        for (NodeId w : g.neighbors(static_cast<NodeId>(v)))
            if (!seen[w]) out.cut_edges.push_back(Link::of(static_cast<NodeId>(v), w));
    }
    std::sort(out.cut_edges.begin(), out.cut_edges.end());
    return out;
}

}  // namespace mcbnc
