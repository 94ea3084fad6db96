#include "mcbnc/synthgen.hpp"

#include <limits>
#include <string>

#include "mcbnc/errors.hpp"

namespace mcbnc {

GenConstraints GenConstraints::for_nodes(std::size_t n) {
    GenConstraints c;
    c.max_edges = static_cast<int>(n * 5 / 2);
    c.perturbations = static_cast<int>(n * 3 / 4);
    return c;
}

bool clamp_constraints(std::size_t n, GenConstraints& c) {
    if (c.max_parents <= 0 || c.max_children <= 0 || c.max_edges <= 0)
        throw InputError("generator limits must be positive");
    if (c.perturbations < 0) throw InputError("perturbation count must be non-negative");
    const auto cap = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
    if (c.max_edges > cap) {
        c.max_edges = static_cast<int>(cap);
        return true;
    }
    return false;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InputError("Rng::below needs a positive bound");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

NodeSet numbered_nodes(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("v" + std::to_string(i));
    return NodeSet(std::move(labels));
}

namespace {

bool can_add(const Dag& g, NodeId from, NodeId to, const GenConstraints& c) {
    return from != to && !g.has_arc(from, to) && !g.has_arc(to, from) &&
           static_cast<int>(g.parents(to).size()) < c.max_parents &&
           static_cast<int>(g.children(from).size()) < c.max_children &&
           static_cast<int>(g.num_arcs()) < c.max_edges;
}

}  // namespace

Dag random_dag(std::size_t n, GenConstraints c, std::uint64_t seed) {
    if (n < 2) throw InputError("random_dag needs at least two nodes");
    clamp_constraints(n, c);
    Rng rng(seed);

    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(rank[i], rank[rng.below(i + 1)]);

    Dag g(numbered_nodes(n));
    const std::size_t attempts = 10 * n * n;
    for (std::size_t k = 0; k < attempts && static_cast<int>(g.num_arcs()) < c.max_edges; ++k) {
        auto i = static_cast<NodeId>(rng.below(n));
        auto j = static_cast<NodeId>(rng.below(n));
        if (i == j) continue;
        if (rank[i] > rank[j]) std::swap(i, j);
        if (can_add(g, i, j, c)) g.add_arc(i, j);
    }
    return g;
}

Dag perturb(const Dag& g, GenConstraints c, std::uint64_t seed, const std::function<void(const Dag&)>& on_step) {
    clamp_constraints(g.num_nodes(), c);
    Rng rng(seed);
    Dag out = g;
    const std::size_t n = g.num_nodes();

    auto remove_random = [&]() {
        if (out.num_arcs() == 0) return;
        const auto arcs = out.arcs();
        const Arc a = arcs[rng.below(arcs.size())];
        out.remove_arc(a.from, a.to);
    };

    for (int op = 0; op < c.perturbations; ++op) {
        if (rng.below(2) == 0) {
            bool added = false;
            for (std::size_t k = 0; k < n * n && !added && n >= 2; ++k) {
                const auto from = static_cast<NodeId>(rng.below(n));
                const auto to = static_cast<NodeId>(rng.below(n));
                if (can_add(out, from, to, c) && !out.would_create_cycle(from, to)) {
                    out.add_arc(from, to);
                    added = true;
                }
            }
            if (!added) remove_random();
        } else {
            remove_random();
        }
        if (on_step) on_step(out);
    }
    return out;
}

}  // namespace mcbnc
