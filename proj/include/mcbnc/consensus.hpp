#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mcbnc/fusion.hpp"
#include "mcbnc/graph.hpp"
#include "mcbnc/pdag.hpp"
#include "mcbnc/rational.hpp"

namespace mcbnc {

using CutSet = std::vector<Link>;

struct CriticalityResult {
    Rational psi;                         // mean cut size over the r graphs
    std::vector<CutSet> per_graph_cuts;   // one sorted cut per input graph
};

/// Criticality of `edge` given conditioning set `cond`: for every input, take the
/// ancestral subgraph of {from, to} + cond, moralize it, drop the cond nodes, and
/// cut from -> to. psi is the exact mean cut size.
/// Throws InputError for unknown nodes or when cond contains an endpoint.
CriticalityResult criticality(Arc edge, std::span<const Dag> graphs, std::span<const NodeId> cond);

/// S = (na_set \ H) + (directed parents of `to` except `from`), sorted.
std::vector<NodeId> conditioning_set(const Pdag& cpdag, NodeId from, NodeId to, std::span<const NodeId> h_set);

struct EdgeCandidate {
    DeleteChoice choice;
    std::vector<NodeId> conditioning;  // S actually scored
    Rational psi;
    std::vector<CutSet> per_graph_cuts;
};

/// Least critical valid (edge, H) pair. Directed arcs are scored as listed,
/// undirected links in both orientations; H ranges over subsets of the
/// conditioning pool with |H| <= k_max that pass the Delete validity check.
/// Ties go to the smaller skeleton pair, then the smaller H (by size, then
/// lexicographically), then the lower-to-higher id orientation.
/// Returns nullopt if no candidate is valid (only possible for small k_max).
/// Throws StateError when the CPDAG has no edges.
std::optional<EdgeCandidate> best_edge(const Pdag& cpdag, std::span<const Dag> graphs, int k_max);

/// Removes from each graph the arcs matching its cut pairs, whichever direction
/// they run. Pairs that were moral marriages in that graph are skipped.
std::vector<Dag> remove_cut_edges(std::span<const Dag> graphs, std::span<const CutSet> per_graph_cuts);

struct PruneStep {
    std::size_t step_index = 0;  // 1-based
    DeleteChoice choice;
    Rational psi_star;
    std::vector<CutSet> per_graph_cuts;
    std::size_t skeleton_edges = 0;  // after the step
    int treewidth_ub = 0;            // after the step
    std::vector<std::size_t> input_edge_counts;
};

struct Trajectory {
    Ordering sigma;
    Dag g_plus;
    int k_max = 10;
    std::optional<Rational> theta;  // nullopt: ran until empty
    std::vector<PruneStep> steps;
    /// Score of the candidate that ended a thresholded run, if any.
    std::optional<Rational> stopped_at;
    Pdag final_state;
};

struct Config {
    std::optional<Rational> theta;  // nullopt selects trajectory mode
    int k_max = 10;
};

struct RunResult {
    Dag consensus;
    Pdag cpdag;
    Trajectory trajectory;
    std::vector<Dag> final_inputs;  // inputs after cut-edge removal
};

/// Fuse, convert to a CPDAG, then repeatedly delete the best edge until its score
/// exceeds theta (or, in trajectory mode, until no edge remains).
RunResult run(const FusionInput& input, const Config& cfg);

/// CPDAG after replaying the first `prefix` steps from g_plus's CPDAG.
Pdag graph_at_prefix(const Trajectory& traj, std::size_t prefix);

/// Number of leading steps a run with threshold theta would perform: steps are
/// taken until the first one scoring above theta.
std::size_t prefix_for_theta(const Trajectory& traj, const Rational& theta);

Pdag graph_at_theta(const Trajectory& traj, const Rational& theta);

struct ThetaSelection {
    Rational theta;
    std::size_t prefix = 0;
    Pdag cpdag;
    Dag dag;
    std::vector<Rational> mean_smhd;     // per prefix 0..|steps|
    std::vector<bool> reachable;         // prefix reproducible by some threshold
};

/// Picks the threshold whose consensus minimises mean SMHD to `inputs` (the
/// original, unpruned input DAGs). Only prefixes reproducible by a threshold are
/// eligible; ties go to the longer prefix. theta is the largest score among the
/// included steps (0 for the empty prefix).
ThetaSelection select_theta(const Trajectory& traj, std::span<const Dag> inputs);

}  // namespace mcbnc
