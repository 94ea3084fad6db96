#pragma once

#include <span>
#include <vector>

#include "mcbnc/graph.hpp"

namespace mcbnc {

/// Partially directed graph: each adjacent pair is either one directed arc or
/// one undirected link, never both. Houses CPDAGs and Delete intermediates.
class Pdag {
public:
    Pdag() = default;
    explicit Pdag(NodeSet nodes);
    Pdag(NodeSet nodes, std::span<const Arc> directed, std::span<const Link> undirected);

    /// Every arc of g kept directed.
    static Pdag from_dag(const Dag& g);

    const NodeSet& nodes() const { return nodes_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    /// Skeleton edge count (directed + undirected).
    std::size_t num_edges() const { return num_directed_ + num_undirected_; }
    std::size_t num_directed() const { return num_directed_; }
    std::size_t num_undirected() const { return num_undirected_; }

    bool has_directed(NodeId from, NodeId to) const;
    bool has_undirected(NodeId a, NodeId b) const;
    bool adjacent(NodeId a, NodeId b) const;

    const std::vector<NodeId>& parents(NodeId v) const { return parents_[v]; }
    const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
    /// Undirected neighbours.
    const std::vector<NodeId>& neighbors(NodeId v) const { return neighbors_[v]; }
    /// Parents, children and neighbours, sorted.
    std::vector<NodeId> adjacents(NodeId v) const;

    std::vector<Arc> directed_arcs() const;
    std::vector<Link> undirected_links() const;
    std::vector<Link> skeleton_links() const;

    /// Throws StructuralError if the pair is already adjacent or on a self-loop.
    void add_directed(NodeId from, NodeId to);
    void add_undirected(NodeId a, NodeId b);
    /// Removes whatever edge joins a and b; returns whether one existed.
    bool remove_edge(NodeId a, NodeId b);
    /// Turns the undirected link a - b into from -> to. No-op when not undirected.
    void orient(NodeId from, NodeId to);

    friend bool operator==(const Pdag& a, const Pdag& b);

private:
    NodeSet nodes_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::vector<NodeId>> neighbors_;
    std::size_t num_directed_ = 0;
    std::size_t num_undirected_ = 0;
};

enum class EdgeKind { Directed, Undirected };

/// One application of the backward Delete operator: remove from - to (a directed
/// arc, or an undirected link evaluated as from -> to) and orient `h_set`.
struct DeleteChoice {
    NodeId from = 0;
    NodeId to = 0;
    EdgeKind kind = EdgeKind::Directed;
    std::vector<NodeId> h_set;  // sorted

    friend bool operator==(const DeleteChoice&, const DeleteChoice&) = default;
};

/// Markov equivalence class pattern of g (compelled arcs directed, reversible
/// arcs undirected) via Chickering's edge ordering / compelled labelling.
Pdag dag_to_cpdag(const Dag& g);

/// Consistent extension by repeated sink elimination (Dor & Tarsi). Among
/// eligible sinks the one latest in `preference` is removed first, so the result
/// follows that order wherever the class allows; without a preference the
/// smallest id goes first. Throws StructuralError when p admits no consistent extension.
Dag pdag_to_dag(const Pdag& p, const Ordering* preference = nullptr);

/// dag_to_cpdag(pdag_to_dag(p)).
Pdag renormalize(const Pdag& p);

/// Conditioning candidates for deleting from -> to: undirected neighbours of
/// `to` that are adjacent to `from`. Sorted. Throws InputError when the two
/// nodes are not adjacent.
std::vector<NodeId> na_set(const Pdag& p, NodeId to, NodeId from);

/// True if every pair in `nodes` is adjacent in p.
bool is_clique(const Pdag& p, std::span<const NodeId> nodes);

/// Delete validity: the edge exists with the stated kind, h_set is a subset of
/// na_set(p, to, from) and na_set \ h_set is a clique.
bool delete_is_valid(const Pdag& p, const DeleteChoice& choice);

/// Removes the edge and, for each h in h_set, orients to - h as to -> h and
/// from - h as from -> h where those links are undirected. The result is a PDAG,
/// not necessarily completed; callers renormalize. Throws InputError when the
/// edge is absent and OperatorError when the validity condition fails.
Pdag apply_delete(const Pdag& p, const DeleteChoice& choice);

}  // namespace mcbnc
