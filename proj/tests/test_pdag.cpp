#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mcbnc/errors.hpp"
#include "mcbnc/pdag.hpp"

using namespace mcbnc;
using fixture::id;

namespace {

/// Same skeleton and same v-structures.
bool markov_equivalent(const Dag& a, const Dag& b) {
    return skeleton(a) == skeleton(b) && oracle::v_structures(a) == oracle::v_structures(b);
}

/// An arc x -> y is covered when Pa(y) = Pa(x) + {x}.
std::vector<Arc> covered_arcs(const Dag& g) {
    std::vector<Arc> out;
    for (const Arc& a : g.arcs()) {
        std::vector<NodeId> expected = g.parents(a.from);
        expected.push_back(a.from);
        std::sort(expected.begin(), expected.end());
        if (expected == g.parents(a.to)) out.push_back(a);
    }
    return out;
}

Pdag all_undirected_step_one() { return oracle::pdag(fixture::wxyz(), {"w--x", "w--y", "x--z", "x--y"}); }

}  // namespace

TEST(Pdag, OnePairOneEdge) {
    NodeSet ns = oracle::nodes({"a", "b"});
    Pdag p(ns);
    p.add_undirected(0, 1);
    EXPECT_THROW(p.add_directed(0, 1), StructuralError);
    EXPECT_THROW(p.add_undirected(0, 0), StructuralError);
    p.orient(1, 0);
    EXPECT_TRUE(p.has_directed(1, 0));
    EXPECT_EQ(p.num_undirected(), 0u);
    EXPECT_EQ(p.num_directed(), 1u);
    EXPECT_TRUE(p.remove_edge(0, 1));
    EXPECT_EQ(p.num_edges(), 0u);
}

TEST(DagToCpdag, WorkedExampleIsFullyReversible) {
    Dag g = oracle::dag(fixture::wxyz(), {"w->x", "w->y", "x->z", "y->x"});
    EXPECT_EQ(dag_to_cpdag(g), all_undirected_step_one());
}

TEST(DagToCpdag, SingleEdgeAndCollider) {
    NodeSet ns = oracle::nodes({"a", "b", "c"});
    EXPECT_EQ(oracle::edge_strings(dag_to_cpdag(oracle::dag(ns, {"a->b"}))), (std::vector<std::string>{"a--b"}));
    EXPECT_EQ(oracle::edge_strings(dag_to_cpdag(oracle::dag(ns, {"a->c", "b->c"}))),
              (std::vector<std::string>{"a->c", "b->c"}));
}

TEST(DagToCpdag, MatchesMeekRuleClosure) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 300; ++i) {
        Dag g = oracle::random_dag(3 + i % 8, 0.4, rng);
        ASSERT_EQ(dag_to_cpdag(g), oracle::meek_cpdag(g)) << i;
    }
}

TEST(DagToCpdag, CoveredReversalKeepsTheClass) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        Dag g = oracle::random_dag(8, 0.4, rng);
        for (const Arc& a : covered_arcs(g)) {
            Dag h = g;
            h.remove_arc(a.from, a.to);
            h.add_arc(a.to, a.from);
            EXPECT_EQ(dag_to_cpdag(g), dag_to_cpdag(h));
        }
    }
}

TEST(PdagToDag, WorkedExampleFollowsTheOrdering) {
    Ordering sigma = fixture::sigma();
    Dag g = pdag_to_dag(all_undirected_step_one(), &sigma);
    EXPECT_EQ(oracle::arc_strings(g), (std::vector<std::string>{"w->x", "w->y", "x->z", "y->x"}));
}

TEST(PdagToDag, DefaultPickIsAMemberOfTheClass) {
    Dag pick = pdag_to_dag(all_undirected_step_one());
    Dag alternative = oracle::dag(fixture::wxyz(), {"x->w", "w->y", "z->x", "x->y"});
    Dag expected_pick = oracle::dag(fixture::wxyz(), {"w->x", "w->y", "x->z", "y->x"});
    EXPECT_TRUE(markov_equivalent(pick, alternative));
    EXPECT_TRUE(markov_equivalent(pick, expected_pick));
    EXPECT_EQ(dag_to_cpdag(pick), all_undirected_step_one());
}

TEST(PdagToDag, FullyDirectedInputIsReturnedUnchanged) {
    Dag g = fixture::g3();
    EXPECT_EQ(pdag_to_dag(Pdag::from_dag(g)), g);
}

TEST(PdagToDag, NoExtensionIsAStructuralError) {
    // Undirected 4-cycle without a chord has no consistent extension.
    NodeSet ns = oracle::nodes({"a", "b", "c", "d"});
    EXPECT_THROW(pdag_to_dag(oracle::pdag(ns, {"a--b", "b--c", "c--d", "a--d"})), StructuralError);
    // Directed cycle.
    NodeSet abc = oracle::nodes({"a", "b", "c"});
    EXPECT_THROW(pdag_to_dag(oracle::pdag(abc, {"a->b", "b->c", "c->a"})), StructuralError);
}

TEST(PdagToDag, RoundTripOnRandomCpdags) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 300; ++i) {
        Dag g = oracle::random_dag(2 + i % 9, 0.45, rng);
        Pdag c = dag_to_cpdag(g);
        Dag ext = pdag_to_dag(c);
        EXPECT_TRUE(markov_equivalent(ext, g));
        for (const Arc& a : c.directed_arcs()) EXPECT_TRUE(ext.has_arc(a.from, a.to));
        EXPECT_EQ(dag_to_cpdag(ext), c);
        EXPECT_EQ(renormalize(c), c);
    }
}

TEST(NaSet, WorkedExamples) {
    Dag g_plus = oracle::dag(fixture::wxyz(), {"w->x", "w->y", "x->z", "y->x", "y->z"});
    EXPECT_TRUE(na_set(Pdag::from_dag(g_plus), id("z"), id("y")).empty());
    EXPECT_EQ(na_set(all_undirected_step_one(), id("x"), id("w")), (std::vector<NodeId>{id("y")}));
    NodeSet ab = oracle::nodes({"a", "b"});
    EXPECT_TRUE(na_set(oracle::pdag(ab, {"a--b"}), 1, 0).empty());
    EXPECT_THROW(na_set(Pdag(ab), 1, 0), InputError);
}

TEST(ApplyDelete, WorkedExampleFirstStep) {
    Dag g_plus = oracle::dag(fixture::wxyz(), {"w->x", "w->y", "x->z", "y->x", "y->z"});
    Pdag after = apply_delete(Pdag::from_dag(g_plus), {id("y"), id("z"), EdgeKind::Directed, {}});
    EXPECT_EQ(oracle::edge_strings(after), (std::vector<std::string>{"w->x", "w->y", "x->z", "y->x"}));
    EXPECT_EQ(renormalize(after), all_undirected_step_one());
}

TEST(ApplyDelete, OnlyEdge) {
    NodeSet ab = oracle::nodes({"a", "b"});
    Pdag after = apply_delete(oracle::pdag(ab, {"a--b"}), {0, 1, EdgeKind::Undirected, {}});
    EXPECT_EQ(after, Pdag(ab));
}

TEST(ApplyDelete, OrientsTowardH) {
    NodeSet ns = oracle::nodes({"h", "u", "v"});
    Pdag p = oracle::pdag(ns, {"u--v", "u--h", "v--h"});
    Pdag after = apply_delete(p, {ns.id("u"), ns.id("v"), EdgeKind::Undirected, {ns.id("h")}});
    EXPECT_EQ(oracle::edge_strings(after), (std::vector<std::string>{"u->h", "v->h"}));
}

TEST(ApplyDelete, RejectsAbsentEdgesAndInvalidChoices) {
    NodeSet ns = oracle::nodes({"a", "b", "c", "d"});
    // b - d with pool {a, c}; a, c non-adjacent so H = {} is invalid.
    Pdag p = oracle::pdag(ns, {"a--b", "a--d", "c--b", "c--d", "b--d"});
    EXPECT_FALSE(delete_is_valid(p, {1, 3, EdgeKind::Undirected, {}}));
    EXPECT_THROW(apply_delete(p, {1, 3, EdgeKind::Undirected, {}}), OperatorError);
    EXPECT_TRUE(delete_is_valid(p, {1, 3, EdgeKind::Undirected, {0}}));
    EXPECT_THROW(apply_delete(p, {0, 2, EdgeKind::Undirected, {}}), InputError);
    EXPECT_THROW(apply_delete(p, {1, 3, EdgeKind::Directed, {0}}), InputError);
    // H outside the pool.
    EXPECT_FALSE(delete_is_valid(p, {0, 1, EdgeKind::Undirected, {2}}));
}

TEST(ApplyDelete, RemovesExactlyOneSkeletonEdge) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        Pdag c = dag_to_cpdag(oracle::random_dag(7, 0.5, rng));
        for (const Link& l : c.skeleton_links()) {
            NodeId from = c.has_directed(l.b, l.a) ? l.b : l.a;
            NodeId to = from == l.a ? l.b : l.a;
            EdgeKind kind = c.has_undirected(l.a, l.b) ? EdgeKind::Undirected : EdgeKind::Directed;
            for (const auto& h : oracle::subsets(na_set(c, to, from))) {
                DeleteChoice choice{from, to, kind, h};
                if (!delete_is_valid(c, choice)) continue;
                Pdag after = apply_delete(c, choice);
                EXPECT_EQ(after.num_edges() + 1, c.num_edges());
                EXPECT_EQ(renormalize(after).num_edges(), after.num_edges());
            }
        }
    }
}
