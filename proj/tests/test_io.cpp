#include "bpqm/error.hpp"
#include "bpqm/io.hpp"
#include "bpqm/verify.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cstring>
#include <sstream>

using namespace bpqm;
namespace bio = bpqm::io;

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(bio::format_double(0.1), "0.1");
    EXPECT_EQ(bio::format_double(2.0), "2");
    EXPECT_EQ(bio::format_double(1e-300), "1e-300");
    RngStream r(1);
    for (int i = 0; i < 10000; ++i) {
        std::uint64_t bits = r.next_u64();
        double x;
        std::memcpy(&x, &bits, sizeof x);
        if (!std::isfinite(x)) continue;
        const std::string s = bio::format_double(x);
        double y = 0;
        std::from_chars(s.data(), s.data() + s.size(), y);
        ASSERT_EQ(x, y) << s;
    }
}

TEST(Json, EigenListRoundTrip) {
    const EigenList lam{2.2, 0.4, 0.4};
    EXPECT_EQ(bio::to_json(lam).dump(), "[2.2,0.4,0.4]");
    EXPECT_EQ(bio::eigen_list_from_json(nlohmann::json::parse(bio::to_json(lam).dump())), lam);
    EXPECT_THROW(bio::eigen_list_from_json(nlohmann::json::parse("{}")), InvalidInput);
    EXPECT_THROW(bio::eigen_list_from_json(nlohmann::json::parse("[1, 3]")), InvalidInput);
}

TEST(Json, GramRowRoundTrip) {
    RngStream r(2);
    const GramRow g = eigen_to_gram(random_eigen_list(5, r));
    const GramRow back = bio::gram_row_from_json(nlohmann::json::parse(bio::to_json(g).dump()));
    for (int i = 0; i < 5; ++i) EXPECT_EQ(back[i], g[i]);
    EXPECT_THROW(bio::gram_row_from_json(nlohmann::json::parse("[[1,0],[0.5]]")), InvalidInput);
}

TEST(Json, EnsembleRoundTrip) {
    const HeraldedEnsemble e = check_combine(EigenList{2.2, 0.4, 0.4}, EigenList{1.0, 1.5, 0.5});
    const HeraldedEnsemble back = bio::ensemble_from_json(nlohmann::json::parse(bio::to_json(e).dump()));
    ASSERT_EQ(back.size(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_EQ(back.branches()[i].prob, e.branches()[i].prob);
        EXPECT_EQ(back.branches()[i].lam, e.branches()[i].lam);
    }
}

TEST(Json, BagRoundTrip) {
    RngStream r(3);
    std::vector<EigenList> s;
    for (int i = 0; i < 20; ++i) s.push_back(random_eigen_list(4, r));
    const ChannelBag b = ChannelBag::from_samples(s);
    EXPECT_EQ(bio::bag_from_json(nlohmann::json::parse(bio::to_json(b).dump())), b);
    EXPECT_THROW(bio::bag_from_json(nlohmann::json::parse(R"({"q":3,"samples":[[1,1]]})")), DimensionMismatch);
}

TEST(Json, UnitaryDump) {
    const auto j = bio::to_json(build_check_unitary(2));
    EXPECT_EQ(j["rows"], 4);
    EXPECT_EQ(j["cols"], 4);
    EXPECT_EQ(j["kind"], "check");
    EXPECT_EQ(j["data"].size(), 16u);
    EXPECT_EQ(j["data"][0].size(), 2u);
}

TEST(Json, ResultRoundTrips) {
    LdpcDERun run;
    run.dv = 3;
    run.dc = 6;
    run.q = 3;
    run.lambda0 = 2.3;
    run.bag_size = 100;
    run.max_iterations = 5;
    run.delta = 1e-6;
    run.seed = 12345678901234ULL;
    run.per_iteration_error = {0.1, 0.01, 1e-7};
    run.verdict = Verdict::converged;
    const LdpcDERun r2 = bio::ldpc_run_from_json(nlohmann::json::parse(bio::to_json(run).dump()));
    EXPECT_EQ(bio::to_json(r2), bio::to_json(run));
    EXPECT_EQ(r2.verdict, Verdict::converged);

    ThresholdResult t;
    t.dv = 3;
    t.dc = 6;
    t.q = 3;
    t.lambda0_threshold = 2.41;
    t.lower = 2.40;
    t.upper = 2.42;
    t.bracket_width = 0.02;
    t.path = {{1.0, true, 0.0, 1}, {3.0, false, 0.66, 100}};
    EXPECT_EQ(bio::to_json(bio::threshold_from_json(nlohmann::json::parse(bio::to_json(t).dump()))), bio::to_json(t));

    const auto d = design_info_set(std::vector<double>{0.01, 0.3, 0.0}, 0.1);
    const auto d2 = bio::polar_design_from_json(nlohmann::json::parse(bio::to_json(d).dump()));
    EXPECT_EQ(d2.info_set, d.info_set);
    EXPECT_EQ(d2.per_channel_error, d.per_channel_error);
    EXPECT_EQ(d2.design_rate, d.design_rate);
}

TEST(Csv, WriteReadRoundTrip) {
    bio::CsvTable t;
    t.comments = {"bpqm 0.1.0", "config: {\"a\":1}"};
    t.columns = {"x", "y"};
    t.rows = {{"1", "0.25"}, {"2", "1e-09"}};
    std::stringstream ss;
    bio::write_csv(ss, t);
    EXPECT_EQ(ss.str(), "# bpqm 0.1.0\n# config: {\"a\":1}\nx,y\n1,0.25\n2,1e-09\n");
    const bio::CsvTable back = bio::read_csv(ss);
    EXPECT_EQ(back.comments, t.comments);
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.number(1, "y"), 1e-9);
    EXPECT_THROW(back.number(0, "z"), InvalidInput);
    EXPECT_EQ(bio::data_section(ss.str()), "x,y\n1,0.25\n2,1e-09\n");
}

TEST(Csv, MalformedInput) {
    std::istringstream ragged("a,b\n1,2,3\n");
    EXPECT_THROW(bio::read_csv(ragged), InvalidInput);
    std::istringstream empty("# only a comment\n");
    EXPECT_THROW(bio::read_csv(empty), InvalidInput);
    std::istringstream text("a\nfoo\n");
    EXPECT_THROW(bio::read_csv(text).number(0, "a"), InvalidInput);
}

TEST(Csv, SweepRoundTrip) {
    const std::vector<SweepRow> rows{{1.0, 1.0, 1.0, 6, 100, 3, 0.1}, {2.2, 0.40625, 0.6961094714265039, 6, 100, 3, 0.1}};
    std::stringstream ss;
    bio::write_csv(ss, bio::sweep_table(rows));
    const auto back = bio::sweep_rows_from_table(bio::read_csv(ss));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].holevo_qits, rows[1].holevo_qits);
    EXPECT_EQ(back[1].design_rate, rows[1].design_rate);
    EXPECT_EQ(back[1].n, 6);
    EXPECT_EQ(bio::sweep_table(rows).columns,
              (std::vector<std::string>{"lambda0", "design_rate", "holevo_qits", "n", "M", "seed", "epsilon"}));
}

TEST(Figures, Columns) {
    const std::vector<SweepRow> rows{{1.0, 1.0, 1.0, 6, 100, 3, 0.1}, {1.0, 1.0, 1.0, 8, 100, 3, 0.1}};
    const auto fig = bio::polar_rate_figure(rows, 8);
    EXPECT_EQ(fig.columns, (std::vector<std::string>{"lambda0", "rate", "holevo"}));
    EXPECT_EQ(fig.rows.size(), 1u);
    EXPECT_EQ(bio::ldpc_curve_figure({{2.0, 1e-7, 10}}).columns, (std::vector<std::string>{"lambda0", "final_error"}));
    const auto rank = bio::rank_figure(normalized_rank({0.3, 0.1, 0.2, 0.0}));
    EXPECT_EQ(rank.columns, (std::vector<std::string>{"rank_over_N", "mean_error"}));
    EXPECT_EQ(rank.rows[0][0], "0.25");
    EXPECT_EQ(rank.rows[3][0], "1");
    EXPECT_EQ(rank.rows[3][1], "0.3");
    EXPECT_EQ(bio::rank_table(normalized_rank({0.3, 0.1})).columns,
              (std::vector<std::string>{"index", "rank", "mean_pgm_error"}));
}
