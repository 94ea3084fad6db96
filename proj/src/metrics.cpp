#include "mcbnc/metrics.hpp"

#include <algorithm>
#include <limits>

#include "mcbnc/errors.hpp"

namespace mcbnc {

int smhd(const Dag& a, const Dag& b) {
    require_same_nodes(a.nodes(), b.nodes());
    const auto ea = moralize(a).edges();
    const auto eb = moralize(b).edges();
    std::vector<Link> diff;
    std::set_symmetric_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(diff));
    return static_cast<int>(diff.size());
}

int smhd(const Pdag& a, const Dag& b) { return smhd(pdag_to_dag(a), b); }

int smhd(const Pdag& a, const Pdag& b) { return smhd(pdag_to_dag(a), pdag_to_dag(b)); }

Rational mean_smhd(const Dag& g, std::span<const Dag> others) {
    if (others.empty()) throw InputError("mean SMHD over an empty set");
    std::int64_t total = 0;
    for (const Dag& o : others) total += smhd(g, o);
    return Rational(total, static_cast<std::int64_t>(others.size()));
}

int treewidth_upper(const UGraph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Link& e : g.edges()) adj[e.a][e.b] = adj[e.b][e.a] = 1;
    std::vector<char> alive(n, 1);

    auto live_neighbors = [&](std::size_t v) {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < n; ++w)
            if (alive[w] && adj[v][w]) out.push_back(w);
        return out;
    };

    int width = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        std::size_t best_degree = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            const auto nb = live_neighbors(v);
            std::size_t fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) ++fill;
            if (fill < best_fill || (fill == best_fill && nb.size() < best_degree)) {
                best = v;
                best_fill = fill;
                best_degree = nb.size();
            }
        }
        const auto nb = live_neighbors(best);
        width = std::max(width, static_cast<int>(nb.size()));
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
        alive[best] = 0;
    }
    return width;
}

int treewidth_upper(const Dag& g) { return treewidth_upper(moralize(g)); }

MetricsReport evaluate(const Dag& g, std::span<const Dag> inputs, const Dag* gold) {
    MetricsReport r;
    if (gold) r.smhd_to_gold = smhd(g, *gold);
    if (!inputs.empty()) r.mean_smhd_to_inputs = mean_smhd(g, inputs);
    r.edge_count = static_cast<int>(g.num_arcs());
    r.treewidth_ub = treewidth_upper(g);
    return r;
}

}  // namespace mcbnc
