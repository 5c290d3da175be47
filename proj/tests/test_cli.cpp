#include "collab/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using collab::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public testing::Test
{
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("collab_cli_" + std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& contents)
    {
        const auto p = dir / name;
        std::ofstream(p, std::ios::binary) << contents;
        return p;
    }

    std::size_t file_count(const fs::path& d) const
    {
        return static_cast<std::size_t>(std::distance(fs::directory_iterator(d), fs::directory_iterator{}));
    }

    fs::path dir;
};

} // namespace

TEST_F(CliTest, FeaturesWritesCsv)
{
    const auto in = write("g.csv", "source,target,weight\nA,A,4\nA,B,6\nA,C,2\n");
    const auto out = dir / "out";
    const auto r = invoke({"features", "--input", in.string(), "--out-dir", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(out / "features.csv"), "country,self_weight,external_weight,distinct_partners,external_share_pct\n"
                                           "A,4,8,2,66.666667\n"
                                           "B,0,6,1,100.000000\n"
                                           "C,0,2,1,100.000000\n");
}

TEST_F(CliTest, MissingInputFileNamesPath)
{
    const auto r = invoke({"features", "--input", (dir / "absent.csv").string(), "--out-dir", dir.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("absent.csv"), std::string::npos);
}

TEST_F(CliTest, ParseErrorReportsLineAndLeavesNoFile)
{
    const auto in = write("bad.csv", "source,target,weight\nA,B,2\nA,C,-4\n");
    const auto out = dir / "out";
    const auto r = invoke({"features", "--input", in.string(), "--out-dir", out.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("NonPositiveWeight at line 3"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(out / "features.csv"));
}

TEST_F(CliTest, SynthesizeRoundTripsAndRejectsSmallN)
{
    auto r = invoke({"synthesize", "--seed", "1", "--n-countries", "50", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"features", "--input", (dir / "graph.csv").string(), "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = slurp(dir / "features.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);

    const auto other = dir / "other";
    r = invoke({"synthesize", "--seed", "2", "--out-dir", other.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(slurp(dir / "graph.csv"), slurp(other / "graph.csv"));

    const auto small = dir / "small";
    r = invoke({"synthesize", "--n-countries", "3", "--out-dir", small.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(small / "graph.csv"));
}

TEST_F(CliTest, ClusterProducesThreeClustersDeterministically)
{
    ASSERT_EQ(invoke({"synthesize", "--out-dir", dir.string()}).code, 0);
    const auto in = (dir / "graph.csv").string();
    const auto a = dir / "a";
    const auto b = dir / "b";
    const auto ra = invoke({"cluster", "--input", in, "--out-dir", a.string()});
    const auto rb = invoke({"cluster", "--input", in, "--out-dir", b.string()});
    ASSERT_EQ(ra.code, 0) << ra.err;
    EXPECT_EQ(ra.out, rb.out);
    EXPECT_EQ(ra.out.rfind("k=3 wcss=", 0), 0u);
    EXPECT_EQ(slurp(a / "clusters.csv"), slurp(b / "clusters.csv"));
    EXPECT_EQ(slurp(a / "clusters.svg"), slurp(b / "clusters.svg"));

    std::istringstream csv(slurp(a / "clusters.csv"));
    std::string line;
    std::getline(csv, line);
    std::set<std::string> clusters;
    while (std::getline(csv, line)) {
        const auto c1 = line.find(',');
        clusters.insert(line.substr(c1 + 1, line.find(',', c1 + 1) - c1 - 1));
    }
    EXPECT_EQ(clusters, (std::set<std::string>{"0", "1", "2"}));
}

TEST_F(CliTest, ClusterTooManyClustersLeavesNothing)
{
    const auto in = write("g.csv", "source,target,weight\nA,B,1\nB,C,1\n");
    const auto out = dir / "out";
    const auto r = invoke({"cluster", "--input", in.string(), "--k", "5", "--out-dir", out.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("TooFewDistinctPoints"), std::string::npos);
    EXPECT_FALSE(fs::exists(out / "clusters.csv"));
    EXPECT_FALSE(fs::exists(out / "clusters.svg"));
}

TEST_F(CliTest, SimulateWritesAllOutputs)
{
    const auto r = invoke({"simulate", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* name : {"trajectory.csv", "fig2.svg", "fig3.csv", "fig3.svg"}) {
        EXPECT_TRUE(fs::exists(dir / name)) << name;
    }
    const auto svg = slurp(dir / "fig2.svg");
    EXPECT_NE(svg.find("<!-- alpha=0.05 beta=0.01 y0=5 x0=1 p0=1 -->"), std::string::npos);
    EXPECT_EQ(slurp(dir / "trajectory.csv").rfind("t,x,S,F,y,pct_foreign\n0,1,0,1,5,100\n", 0), 0u);
}

TEST_F(CliTest, SimulateFrozenSystemIsFlat)
{
    const auto r = invoke({"simulate", "--alpha", "0", "--beta", "0", "--t-end", "1", "--dt", "0.25", "--out-dir",
                           dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(slurp(dir / "fig2.svg").find("points=\"40.00,300.00 220.00,300.00 400.00,300.00 580.00,300.00 "
                                           "760.00,300.00\""),
              std::string::npos);
}

TEST_F(CliTest, InvalidConfigurationExitsTwo)
{
    EXPECT_EQ(invoke({"simulate", "--t-end", "0", "--out-dir", dir.string()}).code, 2);
    EXPECT_EQ(invoke({"simulate", "--p0", "1.5", "--out-dir", dir.string()}).code, 2);
    EXPECT_EQ(invoke({"simulate", "--dt", "-1", "--out-dir", dir.string()}).code, 2);
    EXPECT_EQ(invoke({"cluster", "--k", "0", "--input", "x.csv"}).code, 2);
    EXPECT_EQ(invoke({"features"}).code, 2);
    EXPECT_EQ(invoke({"report", "--input", "x", "--share-cut", "100"}).code, 2);
    EXPECT_EQ(invoke({"simulate", "--bogus"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(file_count(dir), 0u);
}

TEST_F(CliTest, ReportFullyExternal)
{
    const auto in = write("g.csv", "source,target,weight\nL,B,5\nB,B,10\n");
    const auto r = invoke({"report", "--input", in.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("fully_external: 1\n  L (distinct_partners=1, external_share_pct=100.000000)\n"),
              std::string::npos)
        << r.out;
}

TEST_F(CliTest, ReportSingleton)
{
    const auto in = write("g.csv", "source,target,weight\nX,X,3\n");
    const auto r = invoke({"report", "--input", in.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("top_right: X "), std::string::npos);
    EXPECT_NE(r.out.find("bottom_left: X "), std::string::npos);
}

TEST_F(CliTest, ReportSynthesizedTopRightEmpty)
{
    ASSERT_EQ(invoke({"synthesize", "--out-dir", dir.string()}).code, 0);
    const auto r = invoke({"report", "--input", (dir / "graph.csv").string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("quadrant TopRight: 0\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, PrintConfigShowsDefaults)
{
    const auto r = invoke({"cluster", "--print-config"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("subcommand=cluster\n"), std::string::npos);
    EXPECT_NE(r.out.find("k=3\n"), std::string::npos);
    EXPECT_NE(r.out.find("restarts=10\n"), std::string::npos);
    EXPECT_NE(r.out.find("dt=0.001\n"), std::string::npos);
    EXPECT_NE(r.out.find("share_cut=median\n"), std::string::npos);
}
