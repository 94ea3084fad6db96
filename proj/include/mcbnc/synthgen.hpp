#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "mcbnc/graph.hpp"

namespace mcbnc {

/// Generator constraints for synthetic benchmarks.
struct GenConstraints {
    int max_parents = 3;
    int max_children = 4;
    int max_edges = 0;
    int perturbations = 0;

    /// Defaults for n nodes: 3 parents, 4 children, floor(2.5 n) edges and
    /// floor(0.75 n) perturbations.
    static GenConstraints for_nodes(std::size_t n);
};

/// Clamps max_edges to n(n-1)/2. Returns true if anything changed.
/// Throws InputError on non-positive limits or a negative perturbation count.
bool clamp_constraints(std::size_t n, GenConstraints& c);

/// All randomness goes through std::mt19937_64, whose output sequence is fixed
/// by the C++ standard; bounded draws use rejection sampling instead of
/// std::uniform_int_distribution so results match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Random DAG over labels v1..vn. Pairs are drawn uniformly and oriented along
/// a random permutation, so the result is acyclic; a pair is kept when it is new
/// and respects the degree limits. Stops at max_edges or after 10 n^2 draws.
Dag random_dag(std::size_t n, GenConstraints c, std::uint64_t seed);

/// Applies exactly c.perturbations random edits. Each edit is an add or a delete
/// with probability 1/2. An add retries up to n^2 random pairs, rejecting
/// existing adjacencies, cycles and constraint violations, and falls back to a
/// delete if none fits. A delete removes a uniformly chosen arc (no-op on an
/// empty graph). `on_step`, when set, sees the graph after every edit.
Dag perturb(const Dag& g, GenConstraints c, std::uint64_t seed,
            const std::function<void(const Dag&)>& on_step = {});

/// Node labels v1..vn.
NodeSet numbered_nodes(std::size_t n);

}  // namespace mcbnc
