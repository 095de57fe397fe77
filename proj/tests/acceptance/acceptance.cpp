// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// when any hard criterion fails; the throughput check is reported only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cellgraph/cli.hpp"
#include "cellgraph/community.hpp"
#include "cellgraph/corr.hpp"
#include "cellgraph/error.hpp"
#include "cellgraph/filter.hpp"
#include "cellgraph/planarity.hpp"
#include "cellgraph/records.hpp"
#include "cellgraph/series.hpp"
#include "cellgraph/socialnets.hpp"
#include "cellgraph/synth.hpp"
#include "oracles.hpp"

using namespace cellgraph;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int hard_failures = 0;

void report(int id, const std::string& title, double limit_s, bool soft, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!o.pass && !soft) ++hard_failures;
  std::printf("[%s] %2d %s (%.2fs%s) %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              soft ? ", soft" : "", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome pearson_oracle() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> d(0, 1);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<double> x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = d(rng) * 100 + 7;
      y[k] = 0.3 * x[k] + d(rng) * 50;
    }
    worst = std::max(worst, std::abs(pearson(x, y) - oracle::pearson(x, y)));
  }
  bool raised = false;
  try {
    std::vector<double> c(10, 4.2), x(10);
    std::iota(x.begin(), x.end(), 0.0);
    pearson(x, c);
  } catch (const UndefinedStatistic&) {
    raised = true;
  }
  return {worst <= 1e-9 && raised, fmt("max |diff| = %.3g", worst) + (raised ? ", constant raises" : ", constant did not raise")};
}

CorrelationMatrix random_complete(std::size_t n, std::mt19937_64& rng) {
  // Distinct weights: a shuffled ladder plus jitter.
  std::vector<double> ladder;
  for (std::size_t k = 0; k < n * (n - 1) / 2; ++k) ladder.push_back(-0.9 + 1.8 * (k + 0.5) / (n * (n - 1) / 2));
  std::shuffle(ladder.begin(), ladder.end(), rng);
  std::vector<double> v(n * n, 1.0);
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) v[i * n + j] = v[j * n + i] = ladder[t++];
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(100 + i));
  return CorrelationMatrix(ids, v);
}

Outcome pmfg_suite() {
  std::size_t graphs = 0;
  for (std::size_t n = 3; n <= 12; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed * 131 + n);
      auto m = random_complete(n, rng);
      auto g = pmfg(m);
      auto edges = index_edges(g);
      auto cert = is_planar(n, edges);
      if (!cert.is_planar || !verify_certificate(n, edges, cert))
        return {false, "uncertified output at n=" + std::to_string(n)};
      if (g.edge_count() != 3 * n - 6) return {false, "edge count at n=" + std::to_string(n)};
      std::size_t bi = 0, bj = 1;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (m(i, j) > m(bi, bj)) bi = i, bj = j;
          if (g.has_edge(i, j)) continue;
          auto more = edges;
          more.emplace_back(i, j);
          auto c2 = is_planar(n, more);
          if (c2.is_planar || !verify_certificate(n, more, c2))
            return {false, "excluded edge keeps planarity at n=" + std::to_string(n)};
        }
      if (!g.has_edge(bi, bj)) return {false, "max edge missing"};
      ++graphs;
    }
  return {true, std::to_string(graphs) + " graphs checked"};
}

Outcome planarity_correctness() {
  std::vector<IndexEdge> k4, k5, k33;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      k5.emplace_back(i, j);
      if (j < 4) k4.emplace_back(i, j);
    }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 3; j < 6; ++j) k33.emplace_back(i, j);
  auto c4 = is_planar(4, k4), c5 = is_planar(5, k5), c33 = is_planar(6, k33);
  if (!c4.is_planar || !verify_certificate(4, k4, c4)) return {false, "K4"};
  if (c5.is_planar || classify_kuratowski(5, k5, c5.kuratowski) != KuratowskiKind::k5) return {false, "K5"};
  if (c33.is_planar || classify_kuratowski(6, k33, c33.kuratowski) != KuratowskiKind::k33) return {false, "K3,3"};

  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + rng() % 30;
    std::vector<double> v(n * n, 1.0);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) v[i * n + j] = v[j * n + i] = u(rng);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(1000 + i));
    auto edges = index_edges(pmfg(CorrelationMatrix(ids, v)));
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(rng() % (edges.size() + 1));
    auto cert = is_planar(n, edges);
    if (!cert.is_planar || !verify_certificate(n, edges, cert)) return {false, "edge-deleted PMFG reported non-planar"};
    ++checked;
  }
  return {true, "K4/K5/K3,3 witnesses verified; " + std::to_string(checked) + " edge-deleted PMFGs planar"};
}

WeightedGraph graph_from(std::size_t n, const std::vector<oracle::WEdge>& edges) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    Node node;
    node.id = "v" + std::to_string(i);
    g.add_node(node);
  }
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
  return g;
}

Outcome modularity_identities() {
  std::mt19937_64 rng(5);
  double worst_one = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng() % 20;
    std::vector<oracle::WEdge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 0.5 + static_cast<double>(rng() % 100) / 10});
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t a = rng() % n, b = rng() % n;
      if (a == b || a + 1 == b || b + 1 == a) continue;
      if (a > b) std::swap(a, b);
      bool dup = false;
      for (const auto& x : e) dup |= x.u == a && x.v == b;
      if (!dup) e.push_back({a, b, 1.0});
    }
    auto g = graph_from(n, e);
    CommunityPartition one;
    for (const auto& node : g.nodes()) one.assignment[node.id] = 0;
    one.k = 1;
    worst_one = std::max(worst_one, std::abs(modularity(g, one)));
  }
  const std::vector<oracle::WEdge> tri = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  auto g = graph_from(6, tri);
  CommunityPartition comp;
  for (int i = 0; i < 6; ++i) comp.assignment["v" + std::to_string(i)] = i / 3;
  comp.k = 2;
  const double q = modularity(g, comp);
  auto lv = louvain(g);
  const double best = oracle::max_modularity(6, tri);
  const bool ok = worst_one <= 1e-12 && q == 0.5 && lv.k == 2 && lv.modularity == 0.5 &&
                  std::abs(best - 0.5) <= 1e-12 && lv.assignment == comp.assignment;
  return {ok, fmt("max |Q_all-in-one| = %.2g", worst_one) + fmt(", Q(triangles) = %.17g", q) +
                  fmt(", louvain Q = %.17g", lv.modularity) + fmt(", exhaustive optimum = %.17g", best)};
}

Outcome planted_recovery() {
  int good = 0;
  double worst = 1;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto calls = gen_calls(10, 4, 0.9, 0.05, seed);
    PipelineConfig cfg;
    cfg.seed = seed;
    const double ari = adjusted_rand_index(build_usn(calls.calls, cfg).partition, partition_from_labels(calls.blocks));
    worst = std::min(worst, ari);
    good += ari >= 0.9;
  }
  return {good >= 95, std::to_string(good) + "/100 seeds with ARI >= 0.9" + fmt(", worst %.3f", worst)};
}

Outcome bssn_end_to_end() {
  std::string detail;
  bool ok = true;
  for (double noise : {0.1, 0.0}) {
    CityOptions opts;
    opts.cells_per_scenario = 15;
    opts.days = 7;
    opts.bin_width = 3600;
    opts.seed = 2016;
    auto city = gen_city(default_scenarios(noise), opts);
    PipelineConfig cfg;
    auto res = build_bssn(city.flows, city.cells, cfg);
    const double ari = adjusted_rand_index(res.partition, partition_from_labels(city.truth));
    // A community's label is correct when it matches the majority planted label.
    std::map<int, std::map<std::string, int>> votes;
    for (const auto& [cell, c] : res.partition.assignment) ++votes[c][city.truth.at(cell)];
    int correct = 0;
    for (const auto& [c, tally] : votes) {
      const auto top = std::max_element(tally.begin(), tally.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
      if (res.labels.count(c) && res.labels.at(c).label == top->first) ++correct;
    }
    const bool pass = noise > 0 ? (std::abs(res.partition.k - 4) <= 1 && ari >= 0.8 && correct >= 3)
                                : (ari == 1.0 && correct >= 3);
    ok &= pass;
    detail += fmt("noise %.1f: ", noise) + "k=" + std::to_string(res.partition.k) + fmt(", ARI=%.4f", ari) +
              ", labels correct " + std::to_string(correct) + "/" + std::to_string(votes.size()) + "; ";
  }
  return {ok, detail};
}

Outcome concentration_check() {
  std::map<std::string, double> uniform;
  for (int i = 0; i < 1000; ++i) uniform["e" + std::to_string(i)] = 3.0;
  const double u = top_share(concentration(uniform), 0.2);
  const double heavy = top_share(concentration(gen_subscribers(10000, 0.5, 7)), 0.2);
  double prev = 1.0;
  bool monotone = true;
  std::string sweep;
  for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const double s = top_share(concentration(gen_subscribers(10000, alpha, 7)), 0.2);
    monotone &= s <= prev + 1e-12;
    prev = s;
    sweep += fmt(" %.3g", alpha) + fmt(":%.4f", s);
  }
  return {std::abs(u - 0.2) <= 1e-9 && heavy >= 0.99 && monotone,
          fmt("uniform %.12f", u) + fmt(", alpha 0.5 -> %.5f", heavy) + ", sweep" + sweep};
}

Outcome temporal_statistics() {
  TimeSeries ts{"periodic", 0, 3600, {}};
  for (int i = 0; i < 240; ++i) ts.values.push_back(100.0 + 40.0 * std::sin(2 * std::numbers::pi * i / 24.0));
  const auto acf = autocorrelation(ts, 24);

  std::mt19937_64 rng(8);
  std::vector<FlowRecord> recs;
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t s = static_cast<std::int64_t>(rng() % (3 * 86400));
    const std::int64_t len = static_cast<std::int64_t>(rng() % 9000);
    recs.push_back({"u", "c" + std::to_string(rng() % 9), s, std::min<std::int64_t>(s + len, 3 * 86400),
                    rng() % 10'000'000, rng() % 10'000'000, 1, 1, "web", ""});
  }
  auto fine = aggregate(recs, {.bin_width = 300, .span = {0, 3 * 86400}});
  auto coarse = aggregate(recs, {.bin_width = 3600, .span = {0, 3 * 86400}});
  double worst = 0;
  for (const auto& [id, c] : coarse)
    for (std::size_t b = 0; b < c.values.size(); ++b) {
      double sum = 0;
      for (std::size_t k = 0; k < 12; ++k) sum += fine.at(id).values[b * 12 + k];
      worst = std::max(worst, std::abs(sum - c.values[b]) / std::max(1.0, std::abs(c.values[b])));
    }
  const bool ok = acf[0] == 1.0 && acf[24] >= 0.95 && worst <= 1e-9;
  return {ok, fmt("ACF(0) = %.17g", acf[0]) + fmt(", ACF(24) = %.6f (target >= 0.95)", acf[24]) +
                  fmt(", coarsening rel. error %.2g", worst)};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("cellgraph-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  auto run = [&](std::vector<std::string> args, const std::string& out) {
    args.insert(args.begin(), "cellgraph");
    args.push_back("--out");
    args.push_back((root / out).string());
    std::ostringstream o, e;
    if (cellgraph::cli::run(args, o, e) != 0) throw std::runtime_error("cli failed: " + e.str());
    std::ifstream in(root / out / "manifest.json");
    return nlohmann::json::parse(in).at("outputs");
  };
  auto p = [&](const std::string& rel) { return (root / rel).string(); };
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> pipelines = {
      {"synth-city", {{"synth-city", "--seed", "7"}}},
      {"synth-calls", {{"synth-calls", "--seed", "7"}}},
      {"synth-subs", {{"synth-subs", "--seed", "7", "--n", "2000"}}},
  };
  std::size_t compared = 0;
  bool ok = true;
  for (const auto& [name, variants] : pipelines) {
    const auto a = run(variants[0], name + "-a"), b = run(variants[0], name + "-b");
    ok &= a == b;
    ++compared;
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> stages = {
      {"aggregate", {"aggregate", "--flows", p("synth-city-a/flows.csv")}},
      {"bssn", {"bssn", "--flows", p("synth-city-a/flows.csv"), "--cells", p("synth-city-a/cells.csv")}},
      {"asn", {"asn", "--flows", p("synth-city-a/flows.csv")}},
      {"usn", {"usn", "--calls", p("synth-calls-a/calls.csv")}},
  };
  for (const auto& [name, args] : stages) {
    nlohmann::json first;
    for (std::string t : {"1", "1", "2", "4"}) {
      auto with_threads = args;
      with_threads.insert(with_threads.end(), {"--threads", t});
      auto digests = run(with_threads, name + "-t" + t + "-" + std::to_string(compared));
      if (first.is_null()) first = digests;
      ok &= digests == first;
      ++compared;
    }
  }
  run({"correlate", "--series", p("aggregate-t1-3/series.csv"), "--threads", "1"}, "corr-1");
  ok &= run({"correlate", "--series", p("aggregate-t1-3/series.csv"), "--threads", "3"}, "corr-3") ==
        run({"correlate", "--series", p("aggregate-t1-3/series.csv"), "--threads", "1"}, "corr-1b");
  ok &= run({"pmfg", "--matrix", p("corr-1/matrix.csv")}, "pmfg-a") ==
        run({"pmfg", "--matrix", p("corr-1/matrix.csv")}, "pmfg-b");
  compared += 2;
  fs::remove_all(root);
  return {ok, std::to_string(compared) + " run pairs compared by output digest"};
}

// Streams synthetic flow rows without materialising the file.
class FlowSource : public std::streambuf {
 public:
  explicit FlowSource(std::size_t rows) : remaining_(rows) {
    line_ = std::string(kFlowHeader) + "\n";
    setg(line_.data(), line_.data(), line_.data() + line_.size());
  }

 protected:
  int_type underflow() override {
    if (remaining_ == 0) return traits_type::eof();
    const std::size_t i = remaining_--;
    const std::int64_t t = static_cast<std::int64_t>((i * 2654435761u) % 604800);
    line_ = "user" + std::to_string(i % 5000) + ",cell" + std::to_string(i % 300) + "," + std::to_string(t) + "," +
            std::to_string(t + static_cast<std::int64_t>(i % 1800)) + "," + std::to_string(i % 90000) + "," +
            std::to_string(i % 900000) + ",12,40,app" + std::to_string(i % 20) + ",host.example\n";
    setg(line_.data(), line_.data(), line_.data() + line_.size());
    return traits_type::to_int_type(line_[0]);
  }

 private:
  std::size_t remaining_;
  std::string line_;
};

Outcome throughput() {
  FlowSource source(1'000'000);
  std::istream in(&source);
  const auto t0 = std::chrono::steady_clock::now();
  auto parsed = parse_flow_csv(in);
  const double parse_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto series = aggregate(parsed.records, {.bin_width = 3600, .span = {0, 604800 + 3600}, .threads = 0});
  const double total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = parsed.records.size() == 1'000'000 && series.size() == 300 && total_s < 10.0;
  return {ok, std::to_string(parsed.records.size()) + " records" + fmt(", parse %.2fs", parse_s) +
                  fmt(", parse+aggregate %.2fs (bound 10s)", total_s)};
}

}  // namespace

int main() {
  report(1, "Pearson matches direct definition on 1000 random pairs", 1.0, false, pearson_oracle);
  report(2, "PMFG structure on complete graphs n=3..12 x 100 seeds", 30.0, false, pmfg_suite);
  report(3, "Planarity verdicts and certificates", 0, false, planarity_correctness);
  report(4, "Modularity identities and exhaustive optimum", 0, false, modularity_identities);
  report(5, "Planted 4x10 partition recovery", 30.0, false, planted_recovery);
  report(6, "End-to-end BSSN on synthetic city", 60.0, false, bssn_end_to_end);
  report(7, "Concentration of traffic", 0, false, concentration_check);
  report(8, "Temporal statistics", 0, false, temporal_statistics);
  report(9, "CLI determinism across runs and thread counts", 0, false, determinism);
  report(10, "Throughput: parse + aggregate 1e6 flow records", 0, true, throughput);
  std::printf("%s: %d hard criteria failed\n", hard_failures ? "FAILED" : "OK", hard_failures);
  return hard_failures ? 1 : 0;
}
