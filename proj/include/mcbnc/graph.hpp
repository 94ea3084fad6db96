#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcbnc {

/// Dense node index into a NodeSet. Ids follow sorted label order.
using NodeId = std::int32_t;

/// Directed edge from -> to.
struct Arc {
    NodeId from = 0;
    NodeId to = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Undirected edge stored canonically with a < b.
struct Link {
    NodeId a = 0;
    NodeId b = 0;

    static Link of(NodeId x, NodeId y) { return x < y ? Link{x, y} : Link{y, x}; }

    friend auto operator<=>(const Link&, const Link&) = default;
};

/// Immutable, shared set of node labels. Labels are kept sorted so that id order,
/// label order and iteration order coincide. Copies share storage.
class NodeSet {
public:
    NodeSet();
    explicit NodeSet(std::vector<std::string> labels);

    std::size_t size() const;
    bool empty() const { return size() == 0; }

    const std::string& label(NodeId id) const;
    const std::vector<std::string>& labels() const;

    /// Throws InputError for unknown labels.
    NodeId id(std::string_view label) const;
    std::optional<NodeId> find(std::string_view label) const;

    bool contains(NodeId id) const { return id >= 0 && static_cast<std::size_t>(id) < size(); }

    friend bool operator==(const NodeSet& a, const NodeSet& b);

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// Throws InputError naming the labels present in one set but not the other.
void require_same_nodes(const NodeSet& expected, const NodeSet& actual);

/// Directed acyclic graph over a NodeSet. Acyclicity is enforced on every
/// mutation; adjacency lists stay sorted so iteration is deterministic.
class Dag {
public:
    Dag() = default;
    explicit Dag(NodeSet nodes);
    /// Throws StructuralError on self-loops or cycles.
    Dag(NodeSet nodes, std::span<const Arc> arcs);

    const NodeSet& nodes() const { return nodes_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_arcs() const { return num_arcs_; }

    bool has_arc(NodeId from, NodeId to) const;
    const std::vector<NodeId>& parents(NodeId v) const { return parents_[v]; }
    const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }

    /// All arcs sorted by (from, to).
    std::vector<Arc> arcs() const;

    /// True if from -> to would close a directed cycle (or is a self-loop).
    bool would_create_cycle(NodeId from, NodeId to) const;

    /// Adds from -> to; no-op if already present. Throws StructuralError on a cycle.
    void add_arc(NodeId from, NodeId to);
    /// Returns whether the arc existed.
    bool remove_arc(NodeId from, NodeId to);

    friend bool operator==(const Dag& a, const Dag& b);

private:
    void insert_unchecked(NodeId from, NodeId to);

    NodeSet nodes_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::size_t num_arcs_ = 0;
};

/// Undirected simple graph with unit edge capacities.
class UGraph {
public:
    UGraph() = default;
    explicit UGraph(NodeSet nodes);
    UGraph(NodeSet nodes, std::span<const Link> edges);

    const NodeSet& nodes() const { return nodes_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_edges() const { return num_edges_; }

    bool has_edge(NodeId a, NodeId b) const;
    const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

    /// All edges sorted canonically.
    std::vector<Link> edges() const;

    /// Adds {a, b}; no-op if present. Throws StructuralError on a self-loop.
    void add_edge(NodeId a, NodeId b);
    bool remove_edge(NodeId a, NodeId b);
    /// Drops every edge incident to v; the node itself stays in the NodeSet.
    void isolate(NodeId v);

    friend bool operator==(const UGraph& a, const UGraph& b);

private:
    NodeSet nodes_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t num_edges_ = 0;
};

/// Total order over all nodes of a NodeSet.
class Ordering {
public:
    Ordering() = default;
    /// Throws InputError unless sequence is a permutation of 0..n-1.
    explicit Ordering(std::vector<NodeId> sequence);

    static Ordering identity(std::size_t n);
    static Ordering from_labels(const NodeSet& nodes, std::span<const std::string> labels);

    const std::vector<NodeId>& sequence() const { return sequence_; }
    std::size_t size() const { return sequence_.size(); }
    std::size_t position(NodeId v) const { return position_[v]; }
    bool precedes(NodeId a, NodeId b) const { return position_[a] < position_[b]; }

    friend bool operator==(const Ordering& a, const Ordering& b) { return a.sequence_ == b.sequence_; }

private:
    std::vector<NodeId> sequence_;
    std::vector<std::size_t> position_;
};

/// Kahn's algorithm with smallest-id-first tie breaking.
Ordering topological_sort(const Dag& g);

/// Nodes with a directed path into `targets`, plus the targets themselves, as a
/// sorted id list. Throws InputError on ids outside the node set.
std::vector<NodeId> ancestral_set(const Dag& g, std::span<const NodeId> targets);

/// Subgraph induced by ancestral_set(g, targets). The result keeps g's NodeSet;
/// nodes outside the ancestral set are present but isolated.
Dag ancestral_subgraph(const Dag& g, std::span<const NodeId> targets);

/// Marries co-parents and drops orientation.
UGraph moralize(const Dag& g);

/// Undirected skeleton (no marriages).
UGraph skeleton(const Dag& g);

/// Moral-ancestral criterion: u and v are d-separated by z iff they are
/// disconnected in moralize(ancestral_subgraph(g, {u, v} + z)) once z is removed.
/// Requires u != v and u, v not in z; throws InputError otherwise.
bool d_separated(const Dag& g, NodeId u, NodeId v, std::span<const NodeId> z);

}  // namespace mcbnc
