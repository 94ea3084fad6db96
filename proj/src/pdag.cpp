#include "mcbnc/pdag.hpp"

#include <algorithm>

#include "mcbnc/errors.hpp"

namespace mcbnc {

namespace {

void insert_sorted(std::vector<NodeId>& list, NodeId v) { list.insert(std::lower_bound(list.begin(), list.end(), v), v); }

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

Pdag::Pdag(NodeSet nodes)
    : nodes_(std::move(nodes)), parents_(nodes_.size()), children_(nodes_.size()), neighbors_(nodes_.size()) {}

Pdag::Pdag(NodeSet nodes, std::span<const Arc> directed, std::span<const Link> undirected) : Pdag(std::move(nodes)) {
    for (const Arc& a : directed) add_directed(a.from, a.to);
    for (const Link& l : undirected) add_undirected(l.a, l.b);
}

Pdag Pdag::from_dag(const Dag& g) {
    auto arcs = g.arcs();
    return Pdag(g.nodes(), arcs, {});
}

bool Pdag::has_directed(NodeId from, NodeId to) const { return contains_sorted(children_[from], to); }

bool Pdag::has_undirected(NodeId a, NodeId b) const { return contains_sorted(neighbors_[a], b); }

bool Pdag::adjacent(NodeId a, NodeId b) const {
    return has_undirected(a, b) || has_directed(a, b) || has_directed(b, a);
}

std::vector<NodeId> Pdag::adjacents(NodeId v) const {
    std::vector<NodeId> out;
    out.reserve(parents_[v].size() + children_[v].size() + neighbors_[v].size());
    out.insert(out.end(), parents_[v].begin(), parents_[v].end());
    out.insert(out.end(), children_[v].begin(), children_[v].end());
    out.insert(out.end(), neighbors_[v].begin(), neighbors_[v].end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Arc> Pdag::directed_arcs() const {
    std::vector<Arc> out;
    for (std::size_t u = 0; u < num_nodes(); ++u)
        for (NodeId v : children_[u]) out.push_back({static_cast<NodeId>(u), v});
    return out;
}

std::vector<Link> Pdag::undirected_links() const {
    std::vector<Link> out;
    for (std::size_t a = 0; a < num_nodes(); ++a)
        for (NodeId b : neighbors_[a])
            if (static_cast<NodeId>(a) < b) out.push_back({static_cast<NodeId>(a), b});
    return out;
}

std::vector<Link> Pdag::skeleton_links() const {
    std::vector<Link> out = undirected_links();
    for (const Arc& a : directed_arcs()) out.push_back(Link::of(a.from, a.to));
    std::sort(out.begin(), out.end());
    return out;
}

void Pdag::add_directed(NodeId from, NodeId to) {
    if (!nodes_.contains(from) || !nodes_.contains(to)) throw InputError("edge endpoint out of range");
    if (from == to) throw StructuralError("self-loop on '" + nodes_.label(from) + "'");
    if (has_directed(from, to)) return;
    if (adjacent(from, to))
        throw StructuralError("pair " + nodes_.label(from) + ", " + nodes_.label(to) + " already joined");
    insert_sorted(children_[from], to);
    insert_sorted(parents_[to], from);
    ++num_directed_;
}

void Pdag::add_undirected(NodeId a, NodeId b) {
    if (!nodes_.contains(a) || !nodes_.contains(b)) throw InputError("edge endpoint out of range");
    if (a == b) throw StructuralError("self-loop on '" + nodes_.label(a) + "'");
    if (has_undirected(a, b)) return;
    if (adjacent(a, b)) throw StructuralError("pair " + nodes_.label(a) + ", " + nodes_.label(b) + " already joined");
    insert_sorted(neighbors_[a], b);
    insert_sorted(neighbors_[b], a);
    ++num_undirected_;
}

bool Pdag::remove_edge(NodeId a, NodeId b) {
    if (erase_sorted(neighbors_[a], b)) {
        erase_sorted(neighbors_[b], a);
        --num_undirected_;
        return true;
    }
    if (erase_sorted(children_[a], b)) {
        erase_sorted(parents_[b], a);
        --num_directed_;
        return true;
    }
    if (erase_sorted(children_[b], a)) {
        erase_sorted(parents_[a], b);
        --num_directed_;
        return true;
    }
    return false;
}

void Pdag::orient(NodeId from, NodeId to) {
    if (!has_undirected(from, to)) return;
    erase_sorted(neighbors_[from], to);
    erase_sorted(neighbors_[to], from);
    --num_undirected_;
    insert_sorted(children_[from], to);
    insert_sorted(parents_[to], from);
    ++num_directed_;
}

bool operator==(const Pdag& a, const Pdag& b) {
    return a.nodes_ == b.nodes_ && a.children_ == b.children_ && a.neighbors_ == b.neighbors_;
}

// ---------------------------------------------------------------------------

Pdag dag_to_cpdag(const Dag& g) {
    enum Label : char { Unknown, Compelled, Reversible };
    const std::size_t n = g.num_nodes();
    const Ordering topo = topological_sort(g);

    // Edge order: by head position ascending, then tail position descending.
    std::vector<Arc> order = g.arcs();
    std::sort(order.begin(), order.end(), [&](const Arc& l, const Arc& r) {
        if (topo.position(l.to) != topo.position(r.to)) return topo.position(l.to) < topo.position(r.to);
        return topo.position(l.from) > topo.position(r.from);
    });

    std::vector<char> label(n * n, Unknown);
    auto at = [&](NodeId from, NodeId to) -> char& { return label[static_cast<std::size_t>(from) * n + to]; };
    auto label_into = [&](NodeId y, Label l, bool only_unknown) {
        for (NodeId p : g.parents(y))
            if (!only_unknown || at(p, y) == Unknown) at(p, y) = l;
    };

    for (const Arc& e : order) {
        if (at(e.from, e.to) != Unknown) continue;
        const NodeId x = e.from;
        const NodeId y = e.to;
        bool finished = false;
        for (NodeId w : g.parents(x)) {
            if (at(w, x) != Compelled) continue;
            if (!g.has_arc(w, y)) {
                label_into(y, Compelled, false);
                finished = true;
                break;
            }
            at(w, y) = Compelled;
        }
        if (finished) continue;

        bool compelled = false;
        for (NodeId z : g.parents(y)) {
            if (z != x && !g.has_arc(z, x)) {
                compelled = true;
                break;
            }
        }
        at(x, y) = compelled ? Compelled : Reversible;
        label_into(y, compelled ? Compelled : Reversible, true);
    }

    Pdag out(g.nodes());
    for (const Arc& e : order) {
        if (at(e.from, e.to) == Compelled)
            out.add_directed(e.from, e.to);
        else
            out.add_undirected(e.from, e.to);
    }
    return out;
}

Dag pdag_to_dag(const Pdag& p, const Ordering* preference) {
    const std::size_t n = p.num_nodes();
    if (preference && preference->size() != n) throw InputError("preference ordering does not cover the nodes");
    std::vector<NodeId> by_id(n);
    for (std::size_t i = 0; i < n; ++i) by_id[i] = static_cast<NodeId>(n - 1 - i);
    const Ordering order = preference ? *preference : Ordering(by_id);
    Pdag work = p;
    std::vector<Arc> arcs = p.directed_arcs();
    std::vector<char> alive(n, 1);

    for (std::size_t removed = 0; removed < n; ++removed) {
        NodeId sink = -1;
        for (std::size_t pos = n; pos-- > 0 && sink < 0;) {
            const NodeId x = order.sequence()[pos];
            if (!alive[x] || !work.children(x).empty()) continue;
            const auto adj = work.adjacents(x);
            bool ok = true;
            for (NodeId y : work.neighbors(x)) {
                for (NodeId z : adj) {
                    if (z != y && !work.adjacent(y, z)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) sink = x;
        }
        if (sink < 0) throw StructuralError("PDAG admits no consistent extension");

        for (NodeId y : work.neighbors(sink)) arcs.push_back({y, sink});
        for (NodeId y : work.adjacents(sink)) work.remove_edge(y, sink);
        alive[sink] = 0;
    }
    std::sort(arcs.begin(), arcs.end());
    return Dag(p.nodes(), arcs);
}

Pdag renormalize(const Pdag& p) { return dag_to_cpdag(pdag_to_dag(p)); }

std::vector<NodeId> na_set(const Pdag& p, NodeId to, NodeId from) {
    if (!p.nodes().contains(to) || !p.nodes().contains(from)) throw InputError("unknown node in na_set");
    if (!p.adjacent(from, to))
        throw InputError(p.nodes().label(from) + " and " + p.nodes().label(to) + " are not adjacent");
    std::vector<NodeId> out;
    for (NodeId w : p.neighbors(to))
        if (w != from && p.adjacent(w, from)) out.push_back(w);
    return out;
}

bool is_clique(const Pdag& p, std::span<const NodeId> nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (!p.adjacent(nodes[i], nodes[j])) return false;
    return true;
}

namespace {

bool edge_matches(const Pdag& p, const DeleteChoice& c) {
    return c.kind == EdgeKind::Directed ? p.has_directed(c.from, c.to) : p.has_undirected(c.from, c.to);
}

}  // namespace

bool delete_is_valid(const Pdag& p, const DeleteChoice& choice) {
    if (!edge_matches(p, choice)) return false;
    const auto pool = na_set(p, choice.to, choice.from);
    std::vector<NodeId> h = choice.h_set;
    std::sort(h.begin(), h.end());
    if (!std::includes(pool.begin(), pool.end(), h.begin(), h.end())) return false;
    std::vector<NodeId> rest;
    std::set_difference(pool.begin(), pool.end(), h.begin(), h.end(), std::back_inserter(rest));
    return is_clique(p, rest);
}

Pdag apply_delete(const Pdag& p, const DeleteChoice& choice) {
    if (!p.nodes().contains(choice.from) || !p.nodes().contains(choice.to) || !edge_matches(p, choice)) {
        throw InputError("edge to delete is not present with the requested orientation");
    }
    if (!delete_is_valid(p, choice)) throw OperatorError("Delete validity condition violated");
    Pdag out = p;
    out.remove_edge(choice.from, choice.to);
    for (NodeId h : choice.h_set) {
        out.orient(choice.to, h);
        out.orient(choice.from, h);
    }
    return out;
}

}  // namespace mcbnc
