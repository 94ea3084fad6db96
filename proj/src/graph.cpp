#include "mcbnc/graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "mcbnc/errors.hpp"

namespace mcbnc {

struct NodeSet::Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
};

namespace {

void check_label(const std::string& label) {
    if (label.empty()) throw InputError("empty node label");
    for (char c : label) {
        if (c == ',' || c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw InputError("invalid character in node label '" + label + "'");
    }
    if (label.find("->") != std::string::npos || label.find("--") != std::string::npos)
        throw InputError("node label may not contain '->' or '--': '" + label + "'");
}

void insert_sorted(std::vector<NodeId>& list, NodeId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    list.insert(it, v);
}

bool erase_sorted(std::vector<NodeId>& list, NodeId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) return false;
    list.erase(it);
    return true;
}

bool contains_sorted(const std::vector<NodeId>& list, NodeId v) {
    return std::binary_search(list.begin(), list.end(), v);
}

}  // namespace

NodeSet::NodeSet() : data_(std::make_shared<const Data>()) {}

NodeSet::NodeSet(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    auto data = std::make_shared<Data>();
    for (const auto& l : labels) check_label(l);
    if (auto dup = std::adjacent_find(labels.begin(), labels.end()); dup != labels.end())
        throw InputError("duplicate node label '" + *dup + "'");
    data->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) data->index.emplace(labels[i], static_cast<NodeId>(i));
    data->labels = std::move(labels);
    data_ = std::move(data);
}

std::size_t NodeSet::size() const { return data_->labels.size(); }

const std::string& NodeSet::label(NodeId id) const {
    if (!contains(id)) throw InputError("node id " + std::to_string(id) + " out of range");
    return data_->labels[static_cast<std::size_t>(id)];
}

const std::vector<std::string>& NodeSet::labels() const { return data_->labels; }

NodeId NodeSet::id(std::string_view label) const {
    auto found = find(label);
    if (!found) throw InputError("unknown node '" + std::string(label) + "'");
    return *found;
}

std::optional<NodeId> NodeSet::find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
}

void require_same_nodes(const NodeSet& expected, const NodeSet& actual) {
    if (expected == actual) return;
    std::vector<std::string> missing, extra;
    std::set_difference(expected.labels().begin(), expected.labels().end(), actual.labels().begin(),
                        actual.labels().end(), std::back_inserter(missing));
    std::set_difference(actual.labels().begin(), actual.labels().end(), expected.labels().begin(),
                        expected.labels().end(), std::back_inserter(extra));
    auto join = [](const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
        return out.empty() ? std::string("-") : out;
    };
    throw InputError("node sets differ: missing {" + join(missing) + "}, unexpected {" + join(extra) + "}");
}

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(NodeSet nodes)
    : nodes_(std::move(nodes)), parents_(nodes_.size()), children_(nodes_.size()) {}

Dag::Dag(NodeSet nodes, std::span<const Arc> arcs) : Dag(std::move(nodes)) {
    for (const Arc& a : arcs) {
        if (!nodes_.contains(a.from) || !nodes_.contains(a.to)) throw InputError("arc endpoint out of range");
        if (a.from == a.to) throw StructuralError("self-loop on '" + nodes_.label(a.from) + "'");
        if (!has_arc(a.from, a.to)) insert_unchecked(a.from, a.to);
    }
    // Kahn; any leftover node lies on or behind a cycle.
    std::vector<std::size_t> indeg(num_nodes());
    for (std::size_t v = 0; v < num_nodes(); ++v) indeg[v] = parents_[v].size();
    std::vector<NodeId> stack;
    for (std::size_t v = 0; v < num_nodes(); ++v)
        if (indeg[v] == 0) stack.push_back(static_cast<NodeId>(v));
    std::size_t seen = 0;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        ++seen;
        for (NodeId c : children_[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    if (seen != num_nodes()) {
        for (std::size_t v = 0; v < num_nodes(); ++v) {
            if (indeg[v] == 0) continue;
            for (NodeId c : children_[v]) {
                if (indeg[c] > 0 && would_create_cycle(c, static_cast<NodeId>(v))) {
                    throw StructuralError("cycle through arc " + nodes_.label(static_cast<NodeId>(v)) + " -> " +
                                          nodes_.label(c));
                }
            }
        }
        throw StructuralError("graph contains a cycle");
    }
}

bool Dag::has_arc(NodeId from, NodeId to) const { return contains_sorted(children_[from], to); }

std::vector<Arc> Dag::arcs() const {
    std::vector<Arc> out;
    out.reserve(num_arcs_);
    for (std::size_t u = 0; u < num_nodes(); ++u)
        for (NodeId v : children_[u]) out.push_back({static_cast<NodeId>(u), v});
    return out;
}

bool Dag::would_create_cycle(NodeId from, NodeId to) const {
    if (from == to) return true;
    // Is `from` reachable from `to`?
    std::vector<char> seen(num_nodes(), 0);
    std::vector<NodeId> stack{to};
    seen[to] = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (NodeId c : children_[x]) {
            if (c == from) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

void Dag::add_arc(NodeId from, NodeId to) {
    if (!nodes_.contains(from) || !nodes_.contains(to)) throw InputError("arc endpoint out of range");
    if (has_arc(from, to)) return;
    if (would_create_cycle(from, to))
        throw StructuralError("arc " + nodes_.label(from) + " -> " + nodes_.label(to) + " would create a cycle");
    insert_unchecked(from, to);
}

bool Dag::remove_arc(NodeId from, NodeId to) {
    if (!erase_sorted(children_[from], to)) return false;
    erase_sorted(parents_[to], from);
    --num_arcs_;
    return true;
}

void Dag::insert_unchecked(NodeId from, NodeId to) {
    insert_sorted(children_[from], to);
    insert_sorted(parents_[to], from);
    ++num_arcs_;
}

bool operator==(const Dag& a, const Dag& b) { return a.nodes_ == b.nodes_ && a.children_ == b.children_; }

// ---------------------------------------------------------------------------
// UGraph

UGraph::UGraph(NodeSet nodes) : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {}

UGraph::UGraph(NodeSet nodes, std::span<const Link> edges) : UGraph(std::move(nodes)) {
    for (const Link& e : edges) add_edge(e.a, e.b);
}

bool UGraph::has_edge(NodeId a, NodeId b) const { return contains_sorted(adjacency_[a], b); }

std::vector<Link> UGraph::edges() const {
    std::vector<Link> out;
    out.reserve(num_edges_);
    for (std::size_t a = 0; a < num_nodes(); ++a)
        for (NodeId b : adjacency_[a])
            if (static_cast<NodeId>(a) < b) out.push_back({static_cast<NodeId>(a), b});
    return out;
}

void UGraph::add_edge(NodeId a, NodeId b) {
    if (!nodes_.contains(a) || !nodes_.contains(b)) throw InputError("edge endpoint out of range");
    if (a == b) throw StructuralError("self-loop on '" + nodes_.label(a) + "'");
    if (has_edge(a, b)) return;
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    ++num_edges_;
}

bool UGraph::remove_edge(NodeId a, NodeId b) {
    if (!erase_sorted(adjacency_[a], b)) return false;
    erase_sorted(adjacency_[b], a);
    --num_edges_;
    return true;
}

void UGraph::isolate(NodeId v) {
    for (NodeId w : adjacency_[v]) erase_sorted(adjacency_[w], v);
    num_edges_ -= adjacency_[v].size();
    adjacency_[v].clear();
}

bool operator==(const UGraph& a, const UGraph& b) { return a.nodes_ == b.nodes_ && a.adjacency_ == b.adjacency_; }

// ---------------------------------------------------------------------------
// Ordering

Ordering::Ordering(std::vector<NodeId> sequence) : sequence_(std::move(sequence)), position_(sequence_.size()) {
    std::vector<char> seen(sequence_.size(), 0);
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        NodeId v = sequence_[i];
        if (v < 0 || static_cast<std::size_t>(v) >= sequence_.size() || seen[v])
            throw InputError("ordering is not a permutation of the node set");
        seen[v] = 1;
        position_[v] = i;
    }
}

Ordering Ordering::identity(std::size_t n) {
    std::vector<NodeId> seq(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = static_cast<NodeId>(i);
    return Ordering(std::move(seq));
}

Ordering Ordering::from_labels(const NodeSet& nodes, std::span<const std::string> labels) {
    if (labels.size() != nodes.size())
        throw InputError("ordering lists " + std::to_string(labels.size()) + " nodes, expected " +
                         std::to_string(nodes.size()));
    std::vector<NodeId> seq;
    seq.reserve(labels.size());
    for (const auto& l : labels) seq.push_back(nodes.id(l));
    return Ordering(std::move(seq));
}

// ---------------------------------------------------------------------------
// Structural primitives

Ordering topological_sort(const Dag& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::size_t> indeg(n);
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v) {
        indeg[v] = g.parents(static_cast<NodeId>(v)).size();
        if (indeg[v] == 0) ready.push(static_cast<NodeId>(v));
    }
    std::vector<NodeId> seq;
    seq.reserve(n);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        seq.push_back(v);
        for (NodeId c : g.children(v))
            if (--indeg[c] == 0) ready.push(c);
    }
    // Unreachable while Dag keeps its invariant.
    if (seq.size() != n) throw StructuralError("graph contains a cycle");
    return Ordering(std::move(seq));
}

std::vector<NodeId> ancestral_set(const Dag& g, std::span<const NodeId> targets) {
    std::vector<char> in(g.num_nodes(), 0);
    std::vector<NodeId> stack;
    for (NodeId t : targets) {
        if (!g.nodes().contains(t)) throw InputError("unknown node id " + std::to_string(t));
        if (!in[t]) {
            in[t] = 1;
            stack.push_back(t);
        }
    }
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (NodeId p : g.parents(x)) {
            if (!in[p]) {
                in[p] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < in.size(); ++v)
        if (in[v]) out.push_back(static_cast<NodeId>(v));
    return out;
}

Dag ancestral_subgraph(const Dag& g, std::span<const NodeId> targets) {
    std::vector<NodeId> members = ancestral_set(g, targets);
    std::vector<char> in(g.num_nodes(), 0);
    for (NodeId v : members) in[v] = 1;
    std::vector<Arc> arcs;
    // Parents of an ancestral node are ancestral, so every incoming arc survives.
    for (NodeId v : members)
        for (NodeId p : g.parents(v)) arcs.push_back({p, v});
    std::sort(arcs.begin(), arcs.end());
    return Dag(g.nodes(), arcs);
}

UGraph moralize(const Dag& g) {
    UGraph m(g.nodes());
    for (std::size_t v = 0; v < g.num_nodes(); ++v) {
        const auto& pa = g.parents(static_cast<NodeId>(v));
        for (std::size_t i = 0; i < pa.size(); ++i) {
            m.add_edge(pa[i], static_cast<NodeId>(v));
            for (std::size_t j = i + 1; j < pa.size(); ++j) m.add_edge(pa[i], pa[j]);
        }
    }
    return m;
}

UGraph skeleton(const Dag& g) {
    UGraph s(g.nodes());
    for (const Arc& a : g.arcs()) s.add_edge(a.from, a.to);
    return s;
}

bool d_separated(const Dag& g, NodeId u, NodeId v, std::span<const NodeId> z) {
    if (!g.nodes().contains(u) || !g.nodes().contains(v)) throw InputError("unknown node in d-separation query");
    if (u == v) throw InputError("d-separation query needs two distinct nodes");
    for (NodeId c : z) {
        if (!g.nodes().contains(c)) throw InputError("unknown node in conditioning set");
        if (c == u || c == v) throw InputError("conditioning set contains a query node");
    }
    std::vector<NodeId> targets(z.begin(), z.end());
    targets.push_back(u);
    targets.push_back(v);
    UGraph m = moralize(ancestral_subgraph(g, targets));
    std::vector<char> blocked(g.num_nodes(), 0);
    for (NodeId c : z) blocked[c] = 1;

    std::vector<char> seen(g.num_nodes(), 0);
    std::vector<NodeId> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (NodeId y : m.neighbors(x)) {
            if (y == v) return false;
            if (!seen[y] && !blocked[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return true;
}

}  // namespace mcbnc
