#include "bpqm/cli.hpp"
#include "bpqm/error.hpp"
#include "bpqm/io.hpp"
#include "bpqm/polar.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bpqm;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("bpqm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST(Cli, ChannelInfoReference) {
    const Result r = run({"channel-info", "--q", "3", "--eigenlist", "2.2,0.4,0.4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = cli::result_section(r.out);
    EXPECT_NEAR(j["holevo_qits"].get<double>(), 0.6961, 1e-4);
    EXPECT_NEAR(j["fidelity"].get<double>(), 0.6, 1e-12);
    EXPECT_NEAR(j["pgm_error"].get<double>(), 0.16085, 1e-5);
    const auto meta = nlohmann::json::parse(r.out)["meta"];
    EXPECT_EQ(meta["tool"], "bpqm");
    EXPECT_EQ(meta["config"]["q"], 3);
    EXPECT_TRUE(meta.contains("wall_time_s"));
}

TEST(Cli, QInferredAndLambda0) {
    const Result a = run({"channel-info", "--eigenlist", "2.2,0.4,0.4"});
    const Result b = run({"channel-info", "--q", "3", "--lambda0", "2.2"});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_NEAR(cli::result_section(a.out)["pgm_error"].get<double>(), cli::result_section(b.out)["pgm_error"].get<double>(),
                1e-15);
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(run({}).code, cli::exit_config);
    EXPECT_EQ(run({"no-such-command"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "4", "--eigenlist", "2.2,0.4,0.4"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3", "--lambda0", "4"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3", "--lambda0", "2", "--eigenlist", "1,1,1"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3", "--eigenlist", "2,2,2"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3", "--eigenlist", "3.5,-0.5,0"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "3", "--lambda0", "2", "--format", "xml"}).code, cli::exit_config);
    EXPECT_EQ(run({"channel-info", "--q", "1", "--lambda0", "1"}).code, cli::exit_config);
    EXPECT_EQ(run({"polar-sweep", "--q", "3", "--grid", "0.5:3:0.5", "--n", "1"}).code, cli::exit_config);
    EXPECT_EQ(run({"polar-sweep", "--q", "3", "--grid", "1:x:0.5"}).code, cli::exit_config);
    EXPECT_EQ(run({"ldpc-run", "--q", "3", "--lambda0", "2", "--dv", "1"}).code, cli::exit_config);
    EXPECT_EQ(run({"ldpc-run", "--q", "3", "--lambda0", "2", "--T", "0"}).code, cli::exit_config);
    EXPECT_EQ(run({"ldpc-threshold", "--q", "3", "--tol", "0"}).code, cli::exit_config);
    EXPECT_EQ(run({"polar-design", "--q", "3", "--lambda0", "2", "--n", "4", "--eps", "-1"}).code, cli::exit_config);
}

TEST(Cli, HelpAndVersion) {
    const Result h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    for (const char* cmd : {"channel-info", "combine", "polar-design", "polar-sweep", "ldpc-run", "ldpc-threshold", "verify"})
        EXPECT_NE(h.out.find(cmd), std::string::npos) << cmd;
    const Result sub = run({"ldpc-threshold", "--help"});
    EXPECT_EQ(sub.code, 0);
    EXPECT_NE(sub.out.find("--tol"), std::string::npos);
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, GuardAndNoTransitionCodes) {
    EXPECT_EQ(run({"polar-design", "--q", "3", "--lambda0", "2", "--n", "30", "--M", "100000"}).code, cli::exit_guard);
    EXPECT_EQ(run({"verify", "--q", "8", "--pairs", "1"}).code, cli::exit_guard);
    EXPECT_EQ(run({"ldpc-threshold", "--q", "3", "--dv", "6", "--dc", "6", "--M", "100"}).code, cli::exit_no_transition);
}

TEST(Cli, CompositeQWarning) {
    const Result r = run({"channel-info", "--q", "4", "--lambda0", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("composite"), std::string::npos);
    EXPECT_EQ(run({"channel-info", "--q", "5", "--lambda0", "2"}).err, "");
}

TEST(Cli, CombineOutputs) {
    const Result j = run({"combine", "--q", "3", "--eigenlist", "2.2,0.4,0.4", "--lambda0-2", "1.5"});
    ASSERT_EQ(j.code, 0) << j.err;
    const auto r = cli::result_section(j.out);
    EXPECT_EQ(r["check"].size(), 3u);
    EXPECT_TRUE(r["fidelity"]["holds"].get<bool>());
    const Result c = run({"combine", "--lambda0", "2.2", "--q", "3", "--format", "csv"});
    std::istringstream in(c.out);
    const auto t = io::read_csv(in);
    EXPECT_EQ(t.rows.size(), 4u);
    EXPECT_NEAR(t.number(3, "lambda_0"), 1.72, 1e-12);
}

TEST(Cli, VerifyTable) {
    const Result r = run({"verify", "--q", "3", "--pairs", "5"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliFiles, LdpcRunRoundTrips) {
    const std::vector<std::string> base{"ldpc-run", "--q", "3", "--lambda0", "2.0", "--M", "2000", "--T", "30"};
    auto args = base;
    args.insert(args.end(), {"--output", path("run.csv")});
    ASSERT_EQ(run(args).code, 0);
    args = base;
    args.insert(args.end(), {"--format", "json", "--output", path("run.json")});
    ASSERT_EQ(run(args).code, 0);

    const LdpcDERun fromjson = io::ldpc_run_from_json(cli::result_section(slurp(path("run.json"))));
    std::ifstream f(path("run.csv"));
    const auto table = io::read_csv(f);
    EXPECT_EQ(table.columns, (std::vector<std::string>{"lambda0", "iteration", "mean_pgm_error"}));
    ASSERT_EQ(table.rows.size(), fromjson.per_iteration_error.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        EXPECT_EQ(table.number(i, "mean_pgm_error"), fromjson.per_iteration_error[i]);
    EXPECT_EQ(table.comments[0], "bpqm 0.1.0");
    EXPECT_EQ(table.comments[1].rfind("config: ", 0), 0u);
    EXPECT_EQ(table.comments[2].rfind("wall_time_s: ", 0), 0u);
}

TEST_F(CliFiles, PolarDesignMatchesLibrary) {
    ASSERT_EQ(run({"polar-design", "--q", "3", "--lambda0", "2.2", "--n", "5", "--M", "500", "--seed", "4", "-o",
                   path("d.json"), "--rank-out", path("rank.csv"), "--rank-figure", path("fig.csv")})
                  .code,
              0);
    const auto d = io::polar_design_from_json(cli::result_section(slurp(path("d.json"))));
    const auto direct = polar_design(EigenList::one_parameter(3, 2.2), 5, 500, 0.1, 4);
    EXPECT_EQ(d.info_set, direct.info_set);
    EXPECT_EQ(d.per_channel_error, direct.per_channel_error);
    std::ifstream rank(path("rank.csv"));
    EXPECT_EQ(io::read_csv(rank).rows.size(), 32u);
    std::ifstream fig(path("fig.csv"));
    EXPECT_EQ(io::read_csv(fig).columns, (std::vector<std::string>{"rank_over_N", "mean_error"}));
}

TEST_F(CliFiles, SweepIsByteIdenticalAcrossThreads) {
    const std::vector<std::string> base{"polar-sweep", "--q", "3", "--n", "3,5", "--grid", "1:3:0.5", "--M", "3000"};
    auto a = base, b = base;
    a.insert(a.begin(), {"--threads", "1"});
    a.insert(a.end(), {"-o", path("a.csv"), "--figure-dir", path("figs")});
    b.insert(b.begin(), {"--threads", "4"});
    b.insert(b.end(), {"-o", path("b.csv")});
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    const std::string da = io::data_section(slurp(path("a.csv")));
    EXPECT_EQ(da, io::data_section(slurp(path("b.csv"))));
    EXPECT_EQ(std::count(da.begin(), da.end(), '\n'), 11);
    EXPECT_TRUE(fs::exists(dir / "figs" / "polar_rate_n3.csv"));
    EXPECT_TRUE(fs::exists(dir / "figs" / "polar_rate_n5.csv"));
    std::ifstream f(path("a.csv"));
    const auto rows = io::sweep_rows_from_table(io::read_csv(f));
    EXPECT_EQ(rows.size(), 10u);
}

TEST_F(CliFiles, ThresholdSummaryAndCurve) {
    const Result r = run({"ldpc-threshold", "--q", "3", "--M", "1000", "--T", "40", "--tol", "0.1", "-o", path("t.json"),
                          "--curve-out", path("curve.csv"), "--grid", "1.5,2.0,2.8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = cli::result_section(slurp(path("t.json")));
    EXPECT_NEAR(j["holevo_limit_lambda0"].get<double>(), 2.5216, 1e-4);
    const ThresholdResult t = io::threshold_from_json(j);
    EXPECT_LE(t.bracket_width, 0.1);
    std::ifstream f(path("curve.csv"));
    const auto curve = io::read_csv(f);
    EXPECT_EQ(curve.columns, (std::vector<std::string>{"lambda0", "final_error"}));
    EXPECT_EQ(curve.rows.size(), 3u);
}

TEST_F(CliFiles, UnwritableOutputIsConfigError) {
    EXPECT_EQ(run({"channel-info", "--q", "3", "--lambda0", "2", "-o", path("missing/dir/x.json")}).code, cli::exit_config);
}

TEST(Cli, ParseGrid) {
    const auto g = cli::parse_grid("1.0:3.0:0.2");
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 3.0);
    EXPECT_EQ(cli::parse_grid("2.5"), std::vector<double>{2.5});
    EXPECT_EQ(cli::parse_grid("1,2.5"), (std::vector<double>{1.0, 2.5}));
    EXPECT_THROW(cli::parse_grid("1:2"), InvalidInput);
    EXPECT_THROW(cli::parse_grid("3:1:0.5"), InvalidInput);
    EXPECT_THROW(cli::parse_grid("1:3:0"), InvalidInput);
    EXPECT_THROW(cli::parse_grid(""), InvalidInput);
}
