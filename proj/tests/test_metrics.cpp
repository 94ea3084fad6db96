#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mcbnc/errors.hpp"
#include "mcbnc/metrics.hpp"

using namespace mcbnc;

TEST(Smhd, IdentityEmptyGraphAndSymmetry) {
    EXPECT_EQ(smhd(fixture::g1(), fixture::g1()), 0);
    EXPECT_EQ(smhd(fixture::g1(), Dag(fixture::wxyz())), 3);
    EXPECT_EQ(smhd(fixture::g1(), fixture::g3()), smhd(fixture::g3(), fixture::g1()));
    EXPECT_THROW(smhd(fixture::g1(), Dag(oracle::nodes({"a"}))), InputError);
}

TEST(Smhd, PdagOverloadsUseTheExtension) {
    Pdag c = dag_to_cpdag(fixture::g3());
    EXPECT_EQ(smhd(c, fixture::g3()), 0);
    EXPECT_EQ(smhd(c, dag_to_cpdag(fixture::g1())), smhd(fixture::g3(), fixture::g1()));
}

TEST(Smhd, PseudometricOnRandomTriples) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
        Dag a = oracle::random_dag(7, 0.4, rng);
        Dag b = oracle::random_dag(7, 0.4, rng);
        Dag c = oracle::random_dag(7, 0.4, rng);
        EXPECT_GE(smhd(a, b), 0);
        EXPECT_EQ(smhd(a, b), smhd(b, a));
        EXPECT_LE(smhd(a, c), smhd(a, b) + smhd(b, c));
        // Markov-equivalent graphs have identical moral graphs.
        EXPECT_EQ(smhd(a, pdag_to_dag(dag_to_cpdag(a))), 0);
    }
}

TEST(MeanSmhd, ExactAverage) {
    std::vector<Dag> others{fixture::g1(), Dag(fixture::wxyz())};
    EXPECT_EQ(mean_smhd(fixture::g1(), others), Rational(3, 2));
    EXPECT_THROW(mean_smhd(fixture::g1(), {}), InputError);
}

TEST(Treewidth, ChainCliqueAndCollider) {
    EXPECT_EQ(treewidth_upper(fixture::g1()), 1);
    NodeSet ns = oracle::nodes({"a", "b", "c", "d"});
    EXPECT_EQ(treewidth_upper(oracle::dag(ns, {"a->b", "a->c", "a->d", "b->c", "b->d", "c->d"})), 3);
    EXPECT_EQ(treewidth_upper(oracle::dag(ns, {"a->d", "b->d", "c->d"})), 3);
    NodeSet abc = oracle::nodes({"a", "b", "c"});
    EXPECT_EQ(treewidth_upper(oracle::dag(abc, {"a->c", "b->c"})), 2);
    EXPECT_EQ(treewidth_upper(Dag(abc)), 0);
}

TEST(Treewidth, MatchesExhaustiveEliminationOnSmallGraphs) {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 200; ++i) {
        UGraph m = moralize(oracle::random_dag(2 + i % 6, 0.45, rng));
        ASSERT_EQ(treewidth_upper(m), oracle::exact_treewidth(m)) << i;
    }
}

TEST(Treewidth, NeverBelowExact) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        UGraph g = oracle::random_ugraph(8, 0.5, rng);
        EXPECT_GE(treewidth_upper(g), oracle::exact_treewidth(g));
    }
}

TEST(Evaluate, ReportsEveryField) {
    std::vector<Dag> inputs = fixture::triple();
    Dag gold = fixture::g1();
    MetricsReport r = evaluate(fixture::g2(), inputs, &gold);
    ASSERT_TRUE(r.smhd_to_gold.has_value());
    EXPECT_EQ(*r.smhd_to_gold, smhd(fixture::g2(), gold));
    EXPECT_EQ(r.mean_smhd_to_inputs, mean_smhd(fixture::g2(), inputs));
    EXPECT_EQ(r.edge_count, 3);
    EXPECT_EQ(r.treewidth_ub, 1);
    EXPECT_FALSE(evaluate(fixture::g2(), inputs).smhd_to_gold.has_value());
}
