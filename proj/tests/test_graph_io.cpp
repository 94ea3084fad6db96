#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "mcbnc/errors.hpp"
#include "mcbnc/graph_io.hpp"

using namespace mcbnc;

TEST(GraphText, ParsesCommentsAndAnyEdgeOrder) {
    Dag g = parse_dag(
        "# the first input\n"
        "nodes: w, x ,y,z\n"
        "\n"
        "y -> z   # trailing comment\n"
        "w->x\n"
        "x -> y\n"
        "x -> y\n");
    EXPECT_EQ(g, fixture::g1());
}

TEST(GraphText, WritesCanonicalSortedOrder) {
    EXPECT_EQ(format_graph(fixture::g3()), "nodes: w,x,y,z\nw -> x\nx -> z\ny -> x\n");
    Pdag p = oracle::pdag(fixture::wxyz(), {"y--x", "x->z", "w--x"});
    EXPECT_EQ(format_graph(p), "nodes: w,x,y,z\nx -> z\nw -- x\nx -- y\n");
}

TEST(GraphText, RoundTrips) {
    Pdag p = oracle::pdag(fixture::wxyz(), {"w->x", "y->x", "x--z"});
    EXPECT_EQ(parse_pdag(format_graph(p)), p);
    EXPECT_EQ(parse_dag(format_graph(fixture::g2())), fixture::g2());
}

TEST(GraphText, ReportsLineNumbers) {
    try {
        parse_dag("nodes: a,b\na -> b\nb => a\n");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    try {
        parse_dag("nodes: a,b\n\na -> c\n");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos) << e.what();
    }
}

TEST(GraphText, RejectsMalformedInput) {
    EXPECT_THROW(parse_dag(""), InputError);
    EXPECT_THROW(parse_dag("a -> b\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,,b\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,a\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,b\na -> a\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,b\na -- b\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,b\na -> b\nb -> a\n"), InputError);
    EXPECT_THROW(parse_pdag("nodes: a,b\na -> b\na -- b\n"), InputError);
    EXPECT_THROW(parse_dag("nodes: a,b,c\na -> b\nb -> c\nc -> a\n"), StructuralError);
}

TEST(Ordering, ParsesOneLabelPerLine) {
    Ordering o = parse_ordering("w\n# comment\ny\n\nx\nz\n", fixture::wxyz());
    EXPECT_EQ(o, fixture::sigma());
    EXPECT_EQ(format_ordering(o, fixture::wxyz()), "w\ny\nx\nz\n");
    EXPECT_THROW(parse_ordering("w\ny\nx\n", fixture::wxyz()), InputError);
    EXPECT_THROW(parse_ordering("w\ny\nx\nq\n", fixture::wxyz()), InputError);
    EXPECT_THROW(parse_ordering("w\ny\nx\nx\n", fixture::wxyz()), InputError);
}

TEST(Files, ReadWriteAndErrorsNameThePath) {
    auto dir = std::filesystem::temp_directory_path() / "mcbnc_graph_io_test";
    std::filesystem::create_directories(dir);
    auto good = dir / "g.graph";
    write_file(good, format_graph(fixture::g1()));
    EXPECT_EQ(read_dag(good), fixture::g1());

    auto bad = dir / "bad.graph";
    write_file(bad, "nodes: a\nb -> a\n");
    try {
        read_dag(bad);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("bad.graph"), std::string::npos);
    }
    EXPECT_THROW(read_dag(dir / "missing.graph"), IoError);
    EXPECT_THROW(write_file(dir / "no_such_dir" / "x.graph", "x"), IoError);
    std::filesystem::remove_all(dir);
}
