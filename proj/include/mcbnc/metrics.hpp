#pragma once

#include <optional>
#include <span>

#include "mcbnc/graph.hpp"
#include "mcbnc/pdag.hpp"
#include "mcbnc/rational.hpp"

namespace mcbnc {

/// Structural moral Hamming distance: size of the symmetric difference of the
/// two moral edge sets. PDAG arguments are extended with pdag_to_dag first.
/// Throws InputError when node sets differ.
int smhd(const Dag& a, const Dag& b);
int smhd(const Pdag& a, const Dag& b);
int smhd(const Pdag& a, const Pdag& b);

/// Mean SMHD from g to each of `others`, exact.
Rational mean_smhd(const Dag& g, std::span<const Dag> others);

/// Min-fill elimination width (ties: smaller degree, then smaller id). Always an
/// upper bound on the true treewidth. The Dag overload works on the moral graph.
int treewidth_upper(const UGraph& g);
int treewidth_upper(const Dag& g);

struct MetricsReport {
    std::optional<int> smhd_to_gold;
    Rational mean_smhd_to_inputs;
    int edge_count = 0;
    int treewidth_ub = 0;
};

MetricsReport evaluate(const Dag& g, std::span<const Dag> inputs, const Dag* gold = nullptr);

}  // namespace mcbnc
