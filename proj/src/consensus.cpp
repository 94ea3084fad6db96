#include "mcbnc/consensus.hpp"

#include <algorithm>
#include <map>

#include "mcbnc/errors.hpp"
#include "mcbnc/maxflow.hpp"
#include "mcbnc/metrics.hpp"

namespace mcbnc {

namespace {

/// Moralized ancestral subgraph of {u, v} + cond with cond removed, cut u -> v.
CutSet conditioned_cut(const Dag& g, NodeId u, NodeId v, std::span<const NodeId> cond) {
    std::vector<NodeId> targets(cond.begin(), cond.end());
    targets.push_back(u);
    targets.push_back(v);
    const std::vector<NodeId> members = ancestral_set(g, targets);

    std::vector<char> removed(g.num_nodes(), 0);
    for (NodeId c : cond) removed[c] = 1;

    UGraph m(g.nodes());
    for (NodeId x : members) {
        if (removed[x]) continue;
        const auto& pa = g.parents(x);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (!removed[pa[i]]) m.add_edge(pa[i], x);
        }
    }
    // Marriages among the parents of every ancestral node, conditioned or not.
    for (NodeId x : members) {
        const auto& pa = g.parents(x);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (removed[pa[i]]) continue;
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (!removed[pa[j]]) m.add_edge(pa[i], pa[j]);
        }
    }
    return min_cut(m, u, v).cut_edges;
}

void check_query(std::span<const Dag> graphs, Arc edge, std::span<const NodeId> cond) {
    if (graphs.empty()) throw InputError("criticality needs at least one input graph");
    const NodeSet& nodes = graphs.front().nodes();
    if (!nodes.contains(edge.from) || !nodes.contains(edge.to)) throw InputError("unknown edge endpoint");
    if (edge.from == edge.to) throw InputError("criticality of a self-loop");
    for (NodeId c : cond) {
        if (!nodes.contains(c)) throw InputError("unknown node in conditioning set");
        if (c == edge.from || c == edge.to) throw InputError("conditioning set contains an edge endpoint");
    }
}

/// Per-graph memo of conditioned cuts, dropped for a graph whenever it changes.
/// A graph's memo is also dropped once it grows past a fixed size.
class CutCache {
public:
    explicit CutCache(std::size_t r) : entries_(r) {}

    const CutSet& get(std::size_t i, const Dag& g, NodeId u, NodeId v, std::span<const NodeId> cond) {
        key_.assign({u, v});
        key_.insert(key_.end(), cond.begin(), cond.end());
        auto it = entries_[i].find(key_);
        if (it == entries_[i].end()) {
            if (entries_[i].size() >= kMaxEntries) entries_[i].clear();
            it = entries_[i].emplace(key_, conditioned_cut(g, u, v, cond)).first;
        }
        return it->second;
    }

    void invalidate(std::size_t i) { entries_[i].clear(); }

private:
    static constexpr std::size_t kMaxEntries = 50000;
    std::vector<std::map<std::vector<NodeId>, CutSet>> entries_;
    std::vector<NodeId> key_;
};

CriticalityResult score(Arc edge, std::span<const Dag> graphs, std::span<const NodeId> cond, CutCache* cache) {
    CriticalityResult out;
    out.per_graph_cuts.reserve(graphs.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        out.per_graph_cuts.push_back(cache ? cache->get(i, graphs[i], edge.from, edge.to, cond)
                                           : conditioned_cut(graphs[i], edge.from, edge.to, cond));
        total += static_cast<std::int64_t>(out.per_graph_cuts.back().size());
    }
    out.psi = Rational(total, static_cast<std::int64_t>(graphs.size()));
    return out;
}

/// Calls fn(h) for every h subset of `pool` with |h| <= k_max whose complement
/// in `pool` is a clique of `cpdag`. Order is unspecified.
template <typename Fn>
void for_each_valid_h(const Pdag& cpdag, const std::vector<NodeId>& pool, int k_max, Fn&& fn) {
    std::vector<NodeId> rest, h;
    const std::size_t cap = static_cast<std::size_t>(std::max(k_max, 0));
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == pool.size()) {
            fn(h);
            return;
        }
        const NodeId x = pool[i];
        if (std::all_of(rest.begin(), rest.end(), [&](NodeId y) { return cpdag.adjacent(x, y); })) {
            rest.push_back(x);
            self(self, i + 1);
            rest.pop_back();
        }
        if (h.size() < cap) {
            h.push_back(x);
            self(self, i + 1);
            h.pop_back();
        }
    };
    rec(rec, 0);
}

struct TieKey {
    Link pair;
    std::vector<NodeId> h;
    bool reversed = false;

    bool operator<(const TieKey& o) const {
        if (pair != o.pair) return pair < o.pair;
        if (h.size() != o.h.size()) return h.size() < o.h.size();
        if (h != o.h) return h < o.h;
        return reversed < o.reversed;
    }
};

// Every cut separates the two endpoints, so a graph containing the arc between
// them contributes at least one edge to any of its cuts. These per-graph lower
// bounds let the search skip candidates that cannot beat the current best
// without changing which candidate wins.
std::optional<EdgeCandidate> best_edge_impl(const Pdag& cpdag, std::span<const Dag> graphs, int k_max,
                                            CutCache* cache) {
    if (cpdag.num_edges() == 0) throw StateError("best_edge called on a CPDAG without edges");
    if (graphs.empty()) throw InputError("best_edge needs at least one input graph");
    for (const Dag& g : graphs) require_same_nodes(cpdag.nodes(), g.nodes());

    struct PairBound {
        Link pair;
        std::vector<char> present;
        std::int64_t bound = 0;
    };
    std::vector<PairBound> pairs;
    for (const Link& pair : cpdag.skeleton_links()) {
        PairBound pb{pair, std::vector<char>(graphs.size(), 0), 0};
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            pb.present[i] = graphs[i].has_arc(pair.a, pair.b) || graphs[i].has_arc(pair.b, pair.a);
            pb.bound += pb.present[i];
        }
        pairs.push_back(std::move(pb));
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const PairBound& x, const PairBound& y) { return x.bound < y.bound; });

    std::optional<EdgeCandidate> best;
    std::int64_t best_total = 0;
    TieKey best_key;
    std::vector<CutSet> cuts(graphs.size());

    for (const PairBound& pb : pairs) {
        if (best && (pb.bound > best_total || (pb.bound == best_total && best_key.pair < pb.pair))) continue;
        const Link& pair = pb.pair;

        struct Orientation {
            NodeId from, to;
            EdgeKind kind;
        };
        std::vector<Orientation> orientations;
        if (cpdag.has_directed(pair.a, pair.b))
            orientations.push_back({pair.a, pair.b, EdgeKind::Directed});
        else if (cpdag.has_directed(pair.b, pair.a))
            orientations.push_back({pair.b, pair.a, EdgeKind::Directed});
        else
            orientations = {{pair.a, pair.b, EdgeKind::Undirected}, {pair.b, pair.a, EdgeKind::Undirected}};

        for (const Orientation& o : orientations) {
            const auto pool = na_set(cpdag, o.to, o.from);
            for_each_valid_h(cpdag, pool, k_max, [&](const std::vector<NodeId>& h_unsorted) {
                std::vector<NodeId> h = h_unsorted;
                std::sort(h.begin(), h.end());
                TieKey key{pair, h, o.from != pair.a};
                if (best && best_total == pb.bound && best_key < key) return;

                std::vector<NodeId> cond = conditioning_set(cpdag, o.from, o.to, h);
                std::int64_t total = 0;
                std::int64_t remaining = pb.bound;
                for (std::size_t i = 0; i < graphs.size(); ++i) {
                    cuts[i] = cache ? cache->get(i, graphs[i], o.from, o.to, cond)
                                    : conditioned_cut(graphs[i], o.from, o.to, cond);
                    total += static_cast<std::int64_t>(cuts[i].size());
                    remaining -= pb.present[i];
                    if (best && total + remaining > best_total) return;
                }
                if (!best || total < best_total || key < best_key) {
                    best = EdgeCandidate{DeleteChoice{o.from, o.to, o.kind, h}, std::move(cond),
                                         Rational(total, static_cast<std::int64_t>(graphs.size())), cuts};
                    best_total = total;
                    best_key = std::move(key);
                }
            });
        }
    }
    return best;
}

void apply_cuts(Dag& g, const CutSet& cuts) {
    for (const Link& c : cuts) {
        g.remove_arc(c.a, c.b);
        g.remove_arc(c.b, c.a);
    }
}

}  // namespace

CriticalityResult criticality(Arc edge, std::span<const Dag> graphs, std::span<const NodeId> cond) {
    check_query(graphs, edge, cond);
    for (const Dag& g : graphs.subspan(1)) require_same_nodes(graphs.front().nodes(), g.nodes());
    return score(edge, graphs, cond, nullptr);
}

std::vector<NodeId> conditioning_set(const Pdag& cpdag, NodeId from, NodeId to, std::span<const NodeId> h_set) {
    const auto pool = na_set(cpdag, to, from);
    std::vector<NodeId> h(h_set.begin(), h_set.end());
    std::sort(h.begin(), h.end());
    std::vector<NodeId> out;
    std::set_difference(pool.begin(), pool.end(), h.begin(), h.end(), std::back_inserter(out));
    for (NodeId p : cpdag.parents(to))
        if (p != from) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<EdgeCandidate> best_edge(const Pdag& cpdag, std::span<const Dag> graphs, int k_max) {
    return best_edge_impl(cpdag, graphs, k_max, nullptr);
}

std::vector<Dag> remove_cut_edges(std::span<const Dag> graphs, std::span<const CutSet> per_graph_cuts) {
    if (graphs.size() != per_graph_cuts.size())
        throw InputError("cut list length does not match the number of graphs");
    std::vector<Dag> out(graphs.begin(), graphs.end());
    for (std::size_t i = 0; i < out.size(); ++i) apply_cuts(out[i], per_graph_cuts[i]);
    return out;
}

RunResult run(const FusionInput& input, const Config& cfg) {
    if (cfg.k_max < 0) throw InputError("k_max must be non-negative");
    if (cfg.theta && *cfg.theta < Rational(0)) throw InputError("theta must be non-negative");

    FusionResult fused = fuse(input);
    RunResult out;
    out.trajectory.sigma = fused.sigma;
    out.trajectory.g_plus = fused.g_plus;
    out.trajectory.k_max = cfg.k_max;
    out.trajectory.theta = cfg.theta;

    Pdag cpdag = dag_to_cpdag(fused.g_plus);
    std::vector<Dag> graphs = input.graphs;
    CutCache cache(graphs.size());

    while (cpdag.num_edges() > 0) {
        auto best = best_edge_impl(cpdag, graphs, cfg.k_max, &cache);
        if (!best) break;
        if (cfg.theta && best->psi > *cfg.theta) {
            out.trajectory.stopped_at = best->psi;
            break;
        }
        cpdag = renormalize(apply_delete(cpdag, best->choice));
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            if (best->per_graph_cuts[i].empty()) continue;
            apply_cuts(graphs[i], best->per_graph_cuts[i]);
            cache.invalidate(i);
        }

        PruneStep step;
        step.step_index = out.trajectory.steps.size() + 1;
        step.choice = std::move(best->choice);
        step.psi_star = best->psi;
        step.per_graph_cuts = std::move(best->per_graph_cuts);
        step.skeleton_edges = cpdag.num_edges();
        step.treewidth_ub = treewidth_upper(pdag_to_dag(cpdag, &fused.sigma));
        for (const Dag& g : graphs) step.input_edge_counts.push_back(g.num_arcs());
        out.trajectory.steps.push_back(std::move(step));
    }

    out.trajectory.final_state = cpdag;
    out.consensus = pdag_to_dag(cpdag, &fused.sigma);
    out.cpdag = std::move(cpdag);
    out.final_inputs = std::move(graphs);
    return out;
}

Pdag graph_at_prefix(const Trajectory& traj, std::size_t prefix) {
    if (prefix > traj.steps.size()) throw InputError("prefix longer than the trajectory");
    Pdag cpdag = dag_to_cpdag(traj.g_plus);
    for (std::size_t t = 0; t < prefix; ++t) cpdag = renormalize(apply_delete(cpdag, traj.steps[t].choice));
    return cpdag;
}

std::size_t prefix_for_theta(const Trajectory& traj, const Rational& theta) {
    std::size_t t = 0;
    while (t < traj.steps.size() && traj.steps[t].psi_star <= theta) ++t;
    return t;
}

Pdag graph_at_theta(const Trajectory& traj, const Rational& theta) {
    return graph_at_prefix(traj, prefix_for_theta(traj, theta));
}

ThetaSelection select_theta(const Trajectory& traj, std::span<const Dag> inputs) {
    if (inputs.empty()) throw InputError("select_theta needs the original input graphs");
    const std::size_t steps = traj.steps.size();

    ThetaSelection out;
    out.mean_smhd.reserve(steps + 1);
    out.reachable.assign(steps + 1, false);

    Rational running_max(0);
    std::optional<std::size_t> winner;
    Pdag cpdag = dag_to_cpdag(traj.g_plus);
    for (std::size_t t = 0;; ++t) {
        if (t > 0) running_max = std::max(running_max, traj.steps[t - 1].psi_star);
        out.mean_smhd.push_back(mean_smhd(pdag_to_dag(cpdag, &traj.sigma), inputs));
        out.reachable[t] = t == steps || running_max < traj.steps[t].psi_star;
        if (out.reachable[t] && (!winner || out.mean_smhd[t] <= out.mean_smhd[*winner])) {
            winner = t;
            out.theta = running_max;
            out.cpdag = cpdag;
        }
        if (t == steps) break;
        cpdag = renormalize(apply_delete(cpdag, traj.steps[t].choice));
    }
    out.prefix = *winner;
    out.dag = pdag_to_dag(out.cpdag, &traj.sigma);
    return out;
}

}  // namespace mcbnc
