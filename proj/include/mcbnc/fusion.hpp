#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mcbnc/graph.hpp"

namespace mcbnc {

struct FusionInput {
    std::vector<Dag> graphs;                   // r >= 1, shared NodeSet
    std::optional<Ordering> ordering_override;  // bypasses the heuristic when set
};

struct FusionResult {
    Dag g_plus;
    Ordering sigma;
    std::vector<Dag> aligned;  // minimal I-map of each input under sigma, input order
};

/// Pluggable ordering heuristic: graphs -> total order.
using OrderingHeuristic = std::function<Ordering(std::span<const Dag>)>;

/// Throws InputError if `graphs` is empty or the node sets differ.
void validate_inputs(std::span<const Dag> graphs);

/// Sorts nodes by mean depth (longest path from a root) across the inputs,
/// breaking ties by label.
Ordering heuristic_ordering(std::span<const Dag> graphs);

/// Minimal I-map of g consistent with sigma. For each node the parent set starts
/// as all sigma-predecessors and predecessors are dropped, latest first, whenever
/// they are d-separated from the node by the remaining candidates.
Dag minimal_imap(const Dag& g, const Ordering& sigma);

/// Union of the sigma-aligned inputs. Uses input.ordering_override if present,
/// otherwise `heuristic` (heuristic_ordering by default).
FusionResult fuse(const FusionInput& input, const OrderingHeuristic& heuristic = heuristic_ordering);

}  // namespace mcbnc
