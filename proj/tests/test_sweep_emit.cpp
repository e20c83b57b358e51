#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "paoi_jam/emit.hpp"
#include "paoi_jam/sweep.hpp"

namespace {

using namespace paoi_jam;

SweepSpec small_spec() {
    SweepSpec spec;
    spec.parameter = "traffic.lambda";
    spec.values = {0.2, 0.4};
    spec.base = nlohmann::json{{"simulation", {{"n_slots", 20'000}}}};
    return spec;
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(LinearGrid, IncludesEndpointAndRounds) {
    const auto g = linear_grid(0.1, 0.9, 0.1);
    ASSERT_EQ(g.size(), 9u);
    EXPECT_EQ(g.front(), 0.1);
    EXPECT_EQ(g[2], 0.3);
    EXPECT_EQ(g.back(), 0.9);
    EXPECT_EQ(linear_grid(1.0, 1.0, 0.5).size(), 1u);
    EXPECT_THROW(linear_grid(1.0, 0.0, 0.1), ValidationError);
}

TEST(Sweep, SinglePointGrid) {
    auto spec = small_spec();
    spec.values = {0.5};
    const auto rows = run_sweep(spec, 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].swept_value, 0.5);
    EXPECT_FALSE(rows[0].paoi_ci);
}

TEST(Sweep, CsvHasHeaderPlusOneLinePerRow) {
    const auto rows = run_sweep(small_spec(), 1);
    ASSERT_EQ(rows.size(), 2u);
    const std::string csv = to_csv(rows);
    EXPECT_EQ(count_lines(csv), 3u);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
}

TEST(Sweep, RowsFollowGridSeriesEngineOrder) {
    auto spec = small_spec();
    spec.engines = {Engine::analytic, Engine::simulation};
    spec.series = {Series{"a", {}}, Series{"b", {{"traffic.q", 0.5}}}};
    const auto rows = run_sweep(spec, 2);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0].series, "a");
    EXPECT_EQ(rows[0].engine, Engine::analytic);
    EXPECT_EQ(rows[1].engine, Engine::simulation);
    EXPECT_TRUE(rows[1].paoi_ci);
    EXPECT_EQ(rows[2].series, "b");
    EXPECT_EQ(rows[4].swept_value, 0.4);
}

TEST(Sweep, ParallelRunIsDeterministic) {
    auto spec = small_spec();
    spec.engines = {Engine::simulation};
    spec.values = {0.2, 0.4, 0.6};
    EXPECT_EQ(to_csv(run_sweep(spec, 1)), to_csv(run_sweep(spec, 3)));
}

TEST(Sweep, ReplicationsAverageSeeds) {
    auto spec = small_spec();
    spec.values = {0.4};
    spec.engines = {Engine::simulation};
    spec.replications = 3;
    spec.seeds = {1, 2, 3};
    const auto rows = run_sweep(spec, 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_GT(*rows[0].paoi_ci, 0.0);
}

TEST(Sweep, ValidationRejectsBadSpecs) {
    auto spec = small_spec();
    spec.values = {};
    EXPECT_THROW(spec.validate(), ValidationError);
    spec.values = {0.1, 0.3, 0.2};
    EXPECT_THROW(spec.validate(), ValidationError);
    spec.values = {0.1};
    spec.metric = "nonsense";
    EXPECT_THROW(spec.validate(), ValidationError);
    spec.metric = "paoi";
    spec.replications = 2;
    spec.seeds = {1};
    EXPECT_THROW(spec.validate(), ValidationError);
}

TEST(Sweep, FailingPointNamesItsValue) {
    auto spec = small_spec();
    spec.values = {0.5, 1.5};
    try {
        run_sweep(spec, 1);
        FAIL() << "sweep accepted lambda*d > 1";
    } catch (const SweepError& e) {
        EXPECT_EQ(e.value(), 1.5);
        EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
    }
}

TEST(Sweep, SettingOneAliasClearsTheOther) {
    SweepSpec spec;
    spec.base = nlohmann::json{{"traffic", {{"lambda", 0.3}}}};
    spec.parameter = "traffic.q_t";
    spec.values = {0.7};
    const Scenario s = scenario_at(spec, 0.7, Series{});
    EXPECT_DOUBLE_EQ(s.traffic.lambda, 0.7);
}

TEST(Sweep, SpecFromJson) {
    const auto j = nlohmann::json::parse(R"({
        "name": "demo", "parameter": "traffic.q",
        "grid": {"start": 0, "stop": 1, "step": 0.25},
        "series": [{"name": "m2", "overrides": {"traffic.model": "M2"}}],
        "engines": "both", "metric": "p_loss"})");
    const SweepSpec spec = sweep_from_json(j, ".");
    EXPECT_EQ(spec.values.size(), 5u);
    EXPECT_EQ(spec.engines.size(), 2u);
    EXPECT_EQ(spec.series.at(0).name, "m2");
    EXPECT_EQ(spec.x_label, "traffic.q");
    EXPECT_THROW(sweep_from_json(nlohmann::json::parse(R"({"parameter": "traffic.q",
        "values": [0.1], "typo": 1})"), "."),
                 ValidationError);
    EXPECT_THROW(sweep_from_json(nlohmann::json::parse(R"({"parameter": "traffic.q",
        "values": [0.1], "engines": "all"})"), "."),
                 ValidationError);
}

TEST(Recipes, AllBuildAndUnknownIsListed) {
    for (const auto& name : recipe_names()) {
        EXPECT_NO_THROW(recipe(name)) << name;
    }
    try {
        recipe("fig9");
        FAIL();
    } catch (const LookupError& e) {
        EXPECT_NE(std::string(e.what()).find("fig4a"), std::string::npos);
    }
}

TEST(Csv, RoundTripsAtNineDigits) {
    auto spec = small_spec();
    spec.engines = {Engine::analytic, Engine::simulation};
    const auto rows = run_sweep(spec, 1);
    const std::string csv = to_csv(rows);
    const auto back = parse_csv(csv);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_NEAR(back[i].paoi, rows[i].paoi, 1e-8 * rows[i].paoi);
        EXPECT_EQ(back[i].engine, rows[i].engine);
        EXPECT_EQ(back[i].series, rows[i].series);
        EXPECT_EQ(back[i].paoi_ci.has_value(), rows[i].paoi_ci.has_value());
    }
    EXPECT_EQ(to_csv(back), csv);
}

TEST(Csv, MalformedRowReportsLine) {
    const std::string bad = std::string(kCsvHeader) + "\n0.1,analytic,1,2,3,4,,5,s\n0.2,analytic,1\n";
    try {
        parse_csv(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(parse_csv("wrong,header\n"), ParseError);
}

TEST(Svg, OnePolylinePerSeriesAndEngine) {
    auto spec = small_spec();
    spec.series = {Series{"a", {}}, Series{"b", {{"traffic.q", 0.5}}}};
    spec.engines = {Engine::analytic, Engine::simulation};
    const std::string svg = to_svg(run_sweep(spec, 1), "paoi", "x", "y", "t");
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++count;
    }
    EXPECT_EQ(count, 4u);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_THROW(to_svg({}, "paoi", "x", "y"), DomainError);
}

TEST(Emit, WritesFileAndRefusesEmptyTable) {
    const auto path = (std::filesystem::temp_directory_path() / "paoi_jam_emit.csv").string();
    const auto rows = run_sweep(small_spec(), 1);
    emit(rows, OutputFormat::csv, path, small_spec());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), to_csv(rows));
    EXPECT_THROW(emit({}, OutputFormat::csv, path, small_spec()), DomainError);
}

}  // namespace
