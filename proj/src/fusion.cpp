#include "mcbnc/fusion.hpp"

#include <algorithm>

#include "mcbnc/errors.hpp"

namespace mcbnc {

void validate_inputs(std::span<const Dag> graphs) {
    if (graphs.empty()) throw InputError("at least one input graph is required");
    for (const Dag& g : graphs.subspan(1)) require_same_nodes(graphs.front().nodes(), g.nodes());
}

Ordering heuristic_ordering(std::span<const Dag> graphs) {
    validate_inputs(graphs);
    const std::size_t n = graphs.front().num_nodes();
    // All inputs contribute equally, so comparing depth sums compares means exactly.
    std::vector<long> depth_sum(n, 0);
    for (const Dag& g : graphs) {
        std::vector<long> depth(n, 0);
        const Ordering topo = topological_sort(g);
        for (NodeId v : topo.sequence())
            for (NodeId p : g.parents(v)) depth[v] = std::max(depth[v], depth[p] + 1);
        for (std::size_t v = 0; v < n; ++v) depth_sum[v] += depth[v];
    }
    std::vector<NodeId> seq(n);
    for (std::size_t v = 0; v < n; ++v) seq[v] = static_cast<NodeId>(v);
    std::stable_sort(seq.begin(), seq.end(), [&](NodeId a, NodeId b) { return depth_sum[a] < depth_sum[b]; });
    return Ordering(std::move(seq));
}

Dag minimal_imap(const Dag& g, const Ordering& sigma) {
    if (sigma.size() != g.num_nodes()) throw InputError("ordering does not cover the graph's nodes");
    std::vector<Arc> arcs;
    const auto& seq = sigma.sequence();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const NodeId v = seq[i];
        std::vector<NodeId> kept(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i));
        for (std::size_t j = i; j-- > 0;) {
            const NodeId w = seq[j];
            std::vector<NodeId> rest;
            rest.reserve(kept.size());
            for (NodeId k : kept)
                if (k != w) rest.push_back(k);
            if (d_separated(g, v, w, rest)) kept = std::move(rest);
        }
        for (NodeId p : kept) arcs.push_back({p, v});
    }
    std::sort(arcs.begin(), arcs.end());
    return Dag(g.nodes(), arcs);
}

FusionResult fuse(const FusionInput& input, const OrderingHeuristic& heuristic) {
    validate_inputs(input.graphs);
    FusionResult out;
    out.sigma = input.ordering_override ? *input.ordering_override : heuristic(input.graphs);
    if (out.sigma.size() != input.graphs.front().num_nodes())
        throw InputError("ordering does not cover the input node set");

    std::vector<Arc> all;
    out.aligned.reserve(input.graphs.size());
    for (const Dag& g : input.graphs) {
        out.aligned.push_back(minimal_imap(g, out.sigma));
        auto arcs = out.aligned.back().arcs();
        all.insert(all.end(), arcs.begin(), arcs.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.g_plus = Dag(input.graphs.front().nodes(), all);
    return out;
}

}  // namespace mcbnc
