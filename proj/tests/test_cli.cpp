#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "mcbnc/graph_io.hpp"
#include "mcbnc/trajectory_io.hpp"

namespace fs = std::filesystem;
using namespace mcbnc;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mcbnc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write_file(path("g1.graph"), format_graph(fixture::g1()));
        write_file(path("g2.graph"), format_graph(fixture::g2()));
        write_file(path("g3.graph"), format_graph(fixture::g3()));
        write_file(path("empty.graph"), format_graph(Dag(fixture::wxyz())));
        write_file(path("sigma.txt"), "w\ny\nx\nz\n");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int cli(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return cli::run_cli(args, out_, err_);
    }

    std::vector<std::string> triple() const { return {path("g1.graph"), path("g2.graph"), path("g3.graph")}; }

    std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    }

    static std::size_t count_files(const fs::path& d, const std::string& ext) {
        std::size_t n = 0;
        for (const auto& e : fs::directory_iterator(d))
            if (e.path().extension() == ext) ++n;
        return n;
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, SynthWritesGoldPlusPerturbedGraphs) {
    ASSERT_EQ(cli({"synth", "--n", "10", "--r", "10", "--seed", "1", "--out", path("s1")}), 0) << err_.str();
    EXPECT_EQ(count_files(path("s1"), ".graph"), 11u);
    EXPECT_TRUE(fs::exists(path("s1/synth_gold.graph")));
    EXPECT_TRUE(fs::exists(path("s1/synth_10.graph")));
    EXPECT_TRUE(fs::exists(path("s1/manifest.json")));

    ASSERT_EQ(cli({"synth", "--n", "10", "--r", "10", "--seed", "1", "--out", path("s2")}), 0);
    for (const char* f : {"synth_gold.graph", "synth_3.graph", "manifest.json"})
        EXPECT_EQ(read_file(path(std::string("s1/") + f)), read_file(path(std::string("s2/") + f))) << f;

    ASSERT_EQ(cli({"synth", "--n", "2", "--r", "1", "--seed", "0", "--out", path("s3")}), 0);
    EXPECT_EQ(count_files(path("s3"), ".graph"), 2u);
}

TEST_F(CliTest, SynthRejectsBadSizes) {
    EXPECT_EQ(cli({"synth", "--n", "1", "--r", "1", "--seed", "0", "--out", path("bad")}), 1);
    EXPECT_FALSE(fs::exists(path("bad")));
    EXPECT_EQ(cli({"synth", "--n", "5", "--r", "1", "--out", path("bad")}), 2);
}

TEST_F(CliTest, SynthWarnsWhenClamping) {
    ASSERT_EQ(cli({"synth", "--n", "3", "--r", "1", "--seed", "0", "--out", path("c")}), 0);
    EXPECT_NE(err_.str().find("clamped"), std::string::npos);
}

TEST_F(CliTest, FuseWorkedExample) {
    ASSERT_EQ(cli(with({"fuse", "--ordering", path("sigma.txt"), "--out", path("f")}, triple())), 0) << err_.str();
    Dag fused = read_dag(path("f/fused.graph"));
    EXPECT_EQ(fused.num_arcs(), 5u);
    EXPECT_EQ(read_file(path("f/ordering.txt")), "w\ny\nx\nz\n");
}

TEST_F(CliTest, FuseSingleInputGivesItsMinimalImap) {
    ASSERT_EQ(cli({"fuse", path("g1.graph"), "--ordering", path("sigma.txt"), "--out", path("f")}), 0);
    EXPECT_EQ(read_dag(path("f/fused.graph")), minimal_imap(fixture::g1(), fixture::sigma()));
}

TEST_F(CliTest, FuseMismatchedNodesFails) {
    write_file(path("other.graph"), "nodes: w,x,y,q\nw -> q\n");
    EXPECT_EQ(cli({"fuse", path("g1.graph"), path("other.graph"), "--out", path("f")}), 1);
    EXPECT_NE(err_.str().find("q"), std::string::npos) << err_.str();
    EXPECT_NE(err_.str().find("z"), std::string::npos) << err_.str();
    EXPECT_FALSE(fs::exists(path("f")));
}

TEST_F(CliTest, ConsensusAtOneHalf) {
    ASSERT_EQ(cli(with({"consensus", "--theta", "0.5", "--ordering", path("sigma.txt"), "--out", path("c")}, triple())),
              0)
        << err_.str();
    EXPECT_EQ(oracle::arc_strings(read_dag(path("c/consensus.graph"))),
              (std::vector<std::string>{"w->x", "w->y", "x->z", "y->x"}));
    EXPECT_EQ(read_pdag(path("c/consensus_cpdag.graph")).num_undirected(), 4u);
    for (const char* f : {"trajectory.json", "metrics.csv", "manifest.json"}) EXPECT_TRUE(fs::exists(path("c") + "/" + f));
}

TEST_F(CliTest, ConsensusTrajectoryModeEndsEmpty) {
    ASSERT_EQ(cli(with({"consensus", "--trajectory", "--ordering", path("sigma.txt"), "--gold", path("g2.graph"),
                        "--out", path("c")},
                       triple())),
              0);
    Trajectory t = parse_trajectory(read_file(path("c/trajectory.json")));
    EXPECT_GE(t.steps.size(), 2u);
    EXPECT_EQ(t.final_state.num_edges(), 0u);
    EXPECT_NE(read_file(path("c/metrics.csv")).find("smhd_to_gold"), std::string::npos);
}

TEST_F(CliTest, ConsensusThetaZeroKeepsTheFusedGraph) {
    ASSERT_EQ(cli(with({"consensus", "--theta", "0", "--ordering", path("sigma.txt"), "--out", path("c")}, triple())), 0);
    EXPECT_EQ(read_dag(path("c/consensus.graph")), fuse(fixture::input()).g_plus);
}

TEST_F(CliTest, ConsensusNeedsExactlyOneMode) {
    EXPECT_EQ(cli(with({"consensus", "--theta", "0.5", "--trajectory", "--out", path("c")}, triple())), 2);
    EXPECT_EQ(cli(with({"consensus", "--out", path("c")}, triple())), 1);
    EXPECT_EQ(cli(with({"consensus", "--theta", "abc", "--out", path("c")}, triple())), 1);
    EXPECT_FALSE(fs::exists(path("c")));
}

TEST_F(CliTest, FailedWriteRemovesPartialOutputs) {
    fs::create_directories(path("c/consensus_cpdag.graph"));
    EXPECT_EQ(cli(with({"consensus", "--theta", "0.5", "--out", path("c")}, triple())), 1);
    EXPECT_FALSE(fs::exists(path("c/consensus.graph")));
    EXPECT_FALSE(fs::exists(path("c/trajectory.json")));
}

TEST_F(CliTest, SelectThetaOnWorkedExample) {
    ASSERT_EQ(cli(with({"consensus", "--trajectory", "--ordering", path("sigma.txt"), "--out", path("c")}, triple())), 0);
    ASSERT_EQ(cli(with({"select-theta", "--trajectory", path("c/trajectory.json"), "--out", path("s")}, triple())), 0)
        << err_.str();
    EXPECT_EQ(out_.str().rfind("theta: ", 0), 0u) << out_.str();
    EXPECT_NE(out_.str().find("prefix: "), std::string::npos);
    EXPECT_NE(out_.str().find("step,psi_star"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("s/selected.graph")));
}

TEST_F(CliTest, SelectThetaOnEmptyTrajectoryIsZero) {
    ASSERT_EQ(cli({"consensus", "--trajectory", path("empty.graph"), "--out", path("c")}), 0);
    ASSERT_EQ(cli({"select-theta", "--trajectory", path("c/trajectory.json"), path("empty.graph"), "--out", path("s")}),
              0);
    EXPECT_EQ(out_.str().rfind("theta: 0\nprefix: 0\n", 0), 0u) << out_.str();
}

TEST_F(CliTest, SelectThetaNeedsInputs) {
    ASSERT_EQ(cli(with({"consensus", "--trajectory", "--out", path("c")}, triple())), 0);
    EXPECT_EQ(cli({"select-theta", "--trajectory", path("c/trajectory.json"), "--out", path("s")}), 2);
    EXPECT_EQ(cli({"select-theta", "--trajectory", path("missing.json"), path("g1.graph"), "--out", path("s")}), 1);
}

TEST_F(CliTest, MetricsRows) {
    ASSERT_EQ(cli({"metrics", path("g1.graph"), path("g1.graph")}), 0);
    EXPECT_EQ(out_.str(), "graph,smhd,edges,treewidth_ub\n" + fs::path(path("g1.graph")).generic_string() +
                              ",0,3,1\nmean,0.000000,3.000000,1.000000\n");

    ASSERT_EQ(cli({"metrics", path("g1.graph"), path("empty.graph")}), 0);
    EXPECT_NE(out_.str().find("empty.graph,3,0,0\n"), std::string::npos) << out_.str();

    ASSERT_EQ(cli(with({"metrics", path("g1.graph")}, triple())), 0);
    std::size_t lines = 0;
    for (char ch : out_.str()) lines += ch == '\n';
    EXPECT_EQ(lines, 5u);

    ASSERT_EQ(cli({"metrics", path("g1.graph"), path("empty.graph"), "--format", "json"}), 0);
    EXPECT_NE(out_.str().find("\"smhd\": 3"), std::string::npos) << out_.str();

    write_file(path("other.graph"), "nodes: a,b\n");
    EXPECT_EQ(cli({"metrics", path("g1.graph"), path("other.graph")}), 1);
    EXPECT_EQ(cli({"metrics", path("g1.graph"), path("g1.graph"), "--format", "xml"}), 2);
}

TEST_F(CliTest, RerunReproducesOutputsByteForByte) {
    ASSERT_EQ(cli(with({"consensus", "--trajectory", "--ordering", path("sigma.txt"), "--gold", path("g2.graph"),
                        "--out", path("c")},
                       triple())),
              0);
    ASSERT_EQ(cli({"rerun", path("c/manifest.json"), "--out", path("again")}), 0) << err_.str();
    for (const char* f : {"trajectory.json", "metrics.csv", "consensus.graph", "consensus_cpdag.graph"})
        EXPECT_EQ(read_file(path(std::string("c/") + f)), read_file(path(std::string("again/") + f))) << f;

    ASSERT_EQ(cli({"rerun", path("c/manifest.json")}), 0) << err_.str();
    ASSERT_EQ(cli({"synth", "--n", "6", "--r", "2", "--seed", "9", "--out", path("s")}), 0);
    ASSERT_EQ(cli({"rerun", path("s/manifest.json"), "--out", path("s2")}), 0);
    EXPECT_EQ(read_file(path("s/synth_2.graph")), read_file(path("s2/synth_2.graph")));
    EXPECT_EQ(read_file(path("s/manifest.json")), read_file(path("s2/manifest.json")));
}

TEST_F(CliTest, ManifestRecordsConfigAndVersion) {
    ASSERT_EQ(cli(with({"consensus", "--theta", "1/3", "--kmax", "4", "--out", path("c")}, triple())), 0);
    const std::string m = read_file(path("c/manifest.json"));
    EXPECT_NE(m.find("\"command\": \"consensus\""), std::string::npos) << m;
    EXPECT_NE(m.find("\"theta\": \"1/3\""), std::string::npos);
    EXPECT_NE(m.find("\"k_max\": 4"), std::string::npos);
    EXPECT_NE(m.find("\"tool_version\": \"" + std::string(cli::kToolVersion) + "\""), std::string::npos);
    EXPECT_NE(m.find("\"../g1.graph\""), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(cli({}), 2);
    EXPECT_EQ(cli({"frobnicate"}), 2);
    EXPECT_EQ(cli({"--help"}), 0);
}
