#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cellgraph/error.hpp"
#include "cellgraph/planarity.hpp"
#include "cellgraph/socialnets.hpp"
#include "cellgraph/synth.hpp"

using namespace cellgraph;

namespace {


FlowRecord app_flow(const std::string& app, std::int64_t t, std::uint64_t bytes) {
  return {"u-" + app, "c0", t, t + 600, bytes / 5, bytes - bytes / 5, 1, 1, app, ""};
}

// Two app groups: one busy in the first half of each 24-bin cycle, the other in
// the second half.
std::vector<FlowRecord> anti_phase_apps(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(1.0, 0.05);
  std::vector<FlowRecord> out;
  const std::vector<std::string> day = {"mail", "maps", "news"}, night = {"game", "stream", "video"};
  for (int bin = 0; bin < 24 * 5; ++bin) {
    const double phase = std::sin(2 * std::numbers::pi * bin / 24.0);
    for (const auto& app : day)
      out.push_back(app_flow(app, bin * 3600, static_cast<std::uint64_t>(1e6 * (1.5 + phase) * jitter(rng))));
    for (const auto& app : night)
      out.push_back(app_flow(app, bin * 3600, static_cast<std::uint64_t>(1e6 * (1.5 - phase) * jitter(rng))));
  }
  return out;
}

}  // namespace

TEST(PipelineConfig, JsonRoundTripAndValidation) {
  PipelineConfig cfg;
  cfg.metric = Metric::flow_count;
  cfg.bin_width = 900;
  cfg.span = Span{0, 86400};
  cfg.ranking = Ranking::abs_value;
  cfg.resolution = 0.8;
  cfg.seed = 12;
  cfg.min_activity = 3;
  EXPECT_EQ(config_from_json(nlohmann::json::parse(to_json(cfg).dump())), cfg);
  PipelineConfig base;
  base.seed = 99;
  auto merged = config_from_json(nlohmann::json{{"resolution", 2.0}}, base);
  EXPECT_EQ(merged.seed, 99u);
  EXPECT_EQ(merged.resolution, 2.0);
  EXPECT_THROW(config_from_json(nlohmann::json{{"resolutoin", 2.0}}), InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json{{"bin_width", 0}}), Error);
  PipelineConfig bad;
  bad.min_activity = -1;
  EXPECT_THROW(validate(bad), InvalidArgument);
}

TEST(Bssn, ZeroNoiseRecoversScenariosExactly) {
  CityOptions opts;
  auto city = gen_city(default_scenarios(0.0), opts);
  auto res = build_bssn(city.flows, city.cells, PipelineConfig{});
  EXPECT_EQ(res.graph.node_count(), 60u);
  EXPECT_EQ(res.partition.k, 4);
  EXPECT_EQ(adjusted_rand_index(res.partition, partition_from_labels(city.truth)), 1.0);
  for (const auto& [cell, truth] : city.truth) EXPECT_EQ(res.labels.at(res.partition.assignment.at(cell)).label, truth);
  for (const auto& node : res.graph.nodes()) {
    EXPECT_TRUE(node.lat && node.lon);
    EXPECT_EQ(node.kind, NodeKind::bs);
    EXPECT_EQ(node.community, res.partition.assignment.at(node.id));
  }
  EXPECT_TRUE(is_planar(res.graph).is_planar);
}

TEST(Bssn, TenPercentNoise) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CityOptions opts;
    opts.seed = seed;
    auto city = gen_city(default_scenarios(0.1), opts);
    PipelineConfig cfg;
    cfg.seed = seed;
    auto res = build_bssn(city.flows, city.cells, cfg);
    EXPECT_GE(adjusted_rand_index(res.partition, partition_from_labels(city.truth)), 0.8) << "seed " << seed;
    EXPECT_NEAR(res.partition.k, 4, 1);
  }
}

TEST(Bssn, MinimalThreeCells) {
  std::vector<FlowRecord> flows;
  std::vector<CellInfo> cells = {{"a", 1, 1, ""}, {"b", 2, 2, ""}, {"c", 3, 3, ""}};
  const std::vector<std::vector<std::uint64_t>> volumes = {{1, 5, 2, 8}, {3, 1, 4, 1}, {9, 2, 6, 5}};
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t b = 0; b < 4; ++b)
      flows.push_back({"u", cells[c].cell_id, static_cast<std::int64_t>(b * 3600), static_cast<std::int64_t>(b * 3600),
                       0, volumes[c][b], 1, 1, "web", ""});
  auto res = build_bssn(flows, cells, PipelineConfig{});
  EXPECT_EQ(res.graph.edge_count(), 3u);
  EXPECT_GE(res.partition.k, 1);
  EXPECT_TRUE(res.labels.empty());  // under a day of data
}

TEST(Bssn, UnknownInactiveAndConstantCellsExcluded) {
  CityOptions opts;
  opts.cells_per_scenario = 2;
  opts.days = 2;
  auto city = gen_city(default_scenarios(0.1), opts);
  city.flows.push_back({"u", "ghost", opts.t0, opts.t0 + 60, 1, 1, 1, 1, "web", ""});
  city.cells.push_back({"flat", 0, 0, ""});
  for (int b = 0; b < 48; ++b)
    city.flows.push_back({"u", "flat", opts.t0 + b * 3600, opts.t0 + b * 3600, 5, 5, 1, 1, "web", ""});
  city.cells.push_back({"silent", 0, 0, ""});
  auto res = build_bssn(city.flows, city.cells, PipelineConfig{});
  EXPECT_EQ(res.graph.node_count(), 8u);
  EXPECT_FALSE(res.graph.find("ghost"));
  EXPECT_FALSE(res.graph.find("flat"));
  EXPECT_EQ(res.excluded, (std::vector<std::string>{"flat", "ghost"}));
}

TEST(Bssn, TooFewCells) {
  std::vector<CellInfo> cells = {{"a", 1, 1, ""}, {"b", 2, 2, ""}};
  std::vector<FlowRecord> flows = {{"u", "a", 0, 10, 1, 1, 1, 1, "w", ""}, {"u", "b", 3600, 3700, 1, 1, 1, 1, "w", ""}};
  EXPECT_THROW(build_bssn(flows, cells, PipelineConfig{}), InvalidArgument);
}

TEST(Bssn, Deterministic) {
  CityOptions opts;
  opts.cells_per_scenario = 5;
  auto city = gen_city(default_scenarios(0.1), opts);
  PipelineConfig one, many;
  many.threads = 4;
  auto a = build_bssn(city.flows, city.cells, one);
  auto b = build_bssn(city.flows, city.cells, many);
  EXPECT_EQ(export_graph(a.graph, GraphFormat::graphml), export_graph(b.graph, GraphFormat::graphml));
  EXPECT_EQ(a.partition, b.partition);
}

TEST(Asn, AntiPhaseGroupsSeparate) {
  auto res = build_asn(anti_phase_apps(1), PipelineConfig{});
  EXPECT_EQ(res.partition.k, 2);
  const auto& a = res.partition.assignment;
  EXPECT_EQ(a.at("mail"), a.at("maps"));
  EXPECT_EQ(a.at("maps"), a.at("news"));
  EXPECT_EQ(a.at("game"), a.at("stream"));
  EXPECT_EQ(a.at("stream"), a.at("video"));
  EXPECT_NE(a.at("mail"), a.at("game"));
  for (std::size_t i = 0; i < res.graph.node_count(); ++i) {
    EXPECT_EQ(res.graph.node(i).kind, NodeKind::app);
    EXPECT_EQ(res.graph.node(i).size, static_cast<double>(res.graph.degree(i)));
  }
}

TEST(Asn, IdenticalUsageIsDegenerateButValid) {
  std::vector<FlowRecord> flows;
  for (int bin = 0; bin < 48; ++bin)
    for (std::string app : {"a", "b", "c", "d", "e"})
      flows.push_back(app_flow(app, bin * 3600, 1000 + 37 * static_cast<std::uint64_t>((bin * 7) % 11)));
  auto res = build_asn(flows, PipelineConfig{});
  EXPECT_EQ(res.graph.edge_count(), 9u);
  EXPECT_TRUE(is_planar(res.graph).is_planar);
  EXPECT_EQ(res.partition.k, 1);
}

TEST(Usn, DirectionIgnoringCounts) {
  std::vector<CallRecord> calls = {{"a", "b", 0, 10}, {"a", "b", 50, 10}, {"b", "a", 90, 10}};
  auto res = build_usn(calls, PipelineConfig{});
  ASSERT_EQ(res.graph.edge_count(), 1u);
  EXPECT_EQ(res.graph.edges()[0].w, 3.0);
  EXPECT_EQ(res.graph.node(0).kind, NodeKind::user);
}

TEST(Usn, SingleCall) {
  std::vector<CallRecord> calls = {{"a", "b", 0, 10}};
  auto res = build_usn(calls, PipelineConfig{});
  EXPECT_EQ(res.graph.edge_count(), 1u);
  EXPECT_EQ(res.partition.k, 1);
  EXPECT_NEAR(res.partition.modularity, 0.0, 1e-12);
}

TEST(Usn, BridgedCliquesSplit) {
  auto g = gen_calls(6, 2, 1.0, 0.0, 1);
  g.calls.push_back({"b0-u0", "b1-u0", 1467331200, 30});
  auto res = build_usn(g.calls, PipelineConfig{});
  EXPECT_EQ(res.partition.k, 2);
  EXPECT_EQ(adjusted_rand_index(res.partition, partition_from_labels(g.blocks)), 1.0);
}

TEST(Usn, ConservationAndSpan) {
  auto g = gen_calls(10, 3, 0.7, 0.1, 4);
  std::mt19937_64 rng(1);
  for (auto& c : g.calls) c.t_start += static_cast<std::int64_t>(rng() % 7200);
  auto res = build_usn(g.calls, PipelineConfig{});
  EXPECT_EQ(res.graph.total_weight(), static_cast<double>(g.calls.size()));

  PipelineConfig window;
  window.span = Span{1467331200, 1467331200 + 3 * 3600};
  std::size_t inside = 0;
  for (const auto& c : g.calls) inside += c.t_start < 1467331200 + 3 * 3600;
  ASSERT_GT(inside, 0u);
  EXPECT_EQ(build_usn(g.calls, window).graph.total_weight(), static_cast<double>(inside));
  window.span = Span{0, 3600};
  EXPECT_THROW(build_usn(g.calls, window), InvalidArgument);
}

TEST(Usn, PlantedRecovery) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_calls(10, 4, 0.9, 0.05, seed);
    PipelineConfig cfg;
    cfg.seed = seed;
    good += adjusted_rand_index(build_usn(g.calls, cfg).partition, partition_from_labels(g.blocks)) >= 0.9;
  }
  EXPECT_GE(good, 19);
}
