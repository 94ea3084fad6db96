#pragma once

#include <span>
#include <string>
#include <string_view>

#include "mcbnc/consensus.hpp"

namespace mcbnc {

/// Trajectory as pretty-printed JSON (field order fixed, nodes by label, scores
/// as exact "p/q" strings plus a float copy). Output is byte-stable.
std::string format_trajectory(const Trajectory& traj);

/// Inverse of format_trajectory. Throws InputError on schema violations.
Trajectory parse_trajectory(std::string_view text);

/// One CSV row per prefix 0..|steps| with columns
///   step,psi_star,psi_star_value,theta,edges,treewidth_ub,mean_smhd_to_inputs[,smhd_to_gold]
/// `psi_star` is the exact score of the step (0 for step 0), `theta` the smallest
/// threshold reaching that prefix, or empty when no threshold does. Edges and
/// treewidth describe pdag_to_dag of the prefix CPDAG. `inputs` are the original
/// inputs.
std::string format_metrics_csv(const Trajectory& traj, std::span<const Dag> inputs, const Dag* gold = nullptr);

}  // namespace mcbnc
