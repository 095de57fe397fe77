#include "cellgraph/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "cellgraph/error.hpp"

namespace cellgraph {
namespace {

std::vector<int> community_vector(const WeightedGraph& g, const CommunityPartition& p) {
  if (p.assignment.size() != g.node_count())
    throw InvalidArgument("partition does not cover exactly the graph's nodes");
  std::vector<int> comm(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto it = p.assignment.find(g.node(i).id);
    if (it == p.assignment.end()) throw InvalidArgument("node " + g.node(i).id + " has no community");
    comm[i] = it->second;
  }
  return comm;
}

// Graph at one Louvain level. loops[i] holds the weight internal to node i
// (counted once); strength includes it twice, so total strength stays 2W.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> loops;
  std::vector<double> strength;
  double two_w = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const WeightedGraph& g) {
  LevelGraph lg;
  lg.adj.resize(g.node_count());
  lg.loops.assign(g.node_count(), 0.0);
  lg.strength.assign(g.node_count(), 0.0);
  std::size_t dropped = 0;
  for (const auto& e : g.edges()) {
    if (!(e.w > 0.0)) {
      ++dropped;
      continue;
    }
    lg.adj[e.u].emplace_back(e.v, e.w);
    lg.adj[e.v].emplace_back(e.u, e.w);
    lg.strength[e.u] += e.w;
    lg.strength[e.v] += e.w;
    lg.two_w += 2.0 * e.w;
  }
  if (dropped > 0) spdlog::warn("community detection ignores {} non-positive edge(s)", dropped);
  return lg;
}

double level_modularity(const LevelGraph& lg, const std::vector<std::size_t>& comm, double resolution) {
  std::vector<double> inner(lg.size(), 0.0), tot(lg.size(), 0.0);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    inner[comm[i]] += lg.loops[i];
    tot[comm[i]] += lg.strength[i];
    for (const auto& [j, w] : lg.adj[i])
      if (i < j && comm[i] == comm[j]) inner[comm[i]] += w;
  }
  const double w_total = lg.two_w / 2.0;
  double q = 0.0;
  for (std::size_t c = 0; c < lg.size(); ++c) {
    if (tot[c] == 0.0 && inner[c] == 0.0) continue;
    const double share = tot[c] / lg.two_w;
    q += inner[c] / w_total - resolution * share * share;
  }
  return q;
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  return order;
}

// Local moving phase; returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<std::size_t>& comm, double resolution,
                std::mt19937_64& rng) {
  constexpr double kMinGain = 1e-9;
  const std::size_t n = lg.size();
  const double w_total = lg.two_w / 2.0;
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += lg.strength[i];

  const auto order = shuffled_order(n, rng);
  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i : order) {
      const std::size_t home = comm[i];
      const double k_i = lg.strength[i];
      touched.clear();
      for (const auto& [j, w] : lg.adj[i]) {
        if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
        link[comm[j]] += w;
      }
      tot[home] -= k_i;
      auto gain = [&](std::size_t c) { return link[c] - resolution * tot[c] * k_i / lg.two_w; };
      const double stay = gain(home);
      std::size_t best = home;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::size_t c : touched) {
        if (c == home) continue;
        const double gc = gain(c);
        if (gc > best_gain || (gc == best_gain && c < best)) {
          best_gain = gc;
          best = c;
        }
      }
      // Gains are in weight units; dividing by W gives the change in Q.
      if (best != home && (best_gain - stay) / w_total > kMinGain) {
        comm[i] = best;
        moved = any_move = true;
      }
      tot[comm[i]] += k_i;
      for (std::size_t c : touched) link[c] = 0.0;
    }
  }
  return any_move;
}

// Renumbers communities densely by first appearance in node order.
std::size_t renumber(std::vector<std::size_t>& comm) {
  std::vector<std::size_t> dense(comm.size(), std::numeric_limits<std::size_t>::max());
  std::size_t k = 0;
  for (auto& c : comm) {
    if (dense[c] == std::numeric_limits<std::size_t>::max()) dense[c] = k++;
    c = dense[c];
  }
  return k;
}

LevelGraph coarsen(const LevelGraph& lg, const std::vector<std::size_t>& comm, std::size_t k) {
  LevelGraph next;
  next.adj.resize(k);
  next.loops.assign(k, 0.0);
  next.strength.assign(k, 0.0);
  next.two_w = lg.two_w;
  std::vector<std::map<std::size_t, double>> links(k);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    next.loops[comm[i]] += lg.loops[i];
    next.strength[comm[i]] += lg.strength[i];
    for (const auto& [j, w] : lg.adj[i]) {
      if (j < i) continue;
      if (comm[i] == comm[j]) {
        next.loops[comm[i]] += w;
      } else {
        links[comm[i]][comm[j]] += w;
        links[comm[j]][comm[i]] += w;
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    next.adj[c].assign(links[c].begin(), links[c].end());
  return next;
}

long long pairs(long long n) { return n * (n - 1) / 2; }

}  // namespace

double modularity(const WeightedGraph& g, const CommunityPartition& p, double resolution) {
  const auto comm = community_vector(g, p);
  double w_total = 0.0;
  std::size_t dropped = 0;
  std::vector<double> strength(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    if (!(e.w > 0.0)) {
      ++dropped;
      continue;
    }
    w_total += e.w;
    strength[e.u] += e.w;
    strength[e.v] += e.w;
  }
  if (dropped > 0) spdlog::warn("modularity ignores {} non-positive edge(s)", dropped);
  if (!(w_total > 0.0)) throw InvalidArgument("modularity: graph has no positive-weight edge");

  std::map<int, double> inner, tot;
  for (std::size_t i = 0; i < g.node_count(); ++i) tot[comm[i]] += strength[i];
  for (const auto& e : g.edges())
    if (e.w > 0.0 && comm[e.u] == comm[e.v]) inner[comm[e.u]] += e.w;
  double q = 0.0;
  for (const auto& [c, s] : tot) {
    const double share = s / (2.0 * w_total);
    q += inner[c] / w_total - resolution * share * share;
  }
  return q;
}

CommunityPartition louvain(const WeightedGraph& g, double resolution, std::uint64_t seed) {
  if (!(resolution > 0.0)) throw InvalidArgument("louvain: resolution must be > 0");
  LevelGraph lg = level_from(g);
  if (!(lg.two_w > 0.0)) throw InvalidArgument("louvain: graph has no positive-weight edge");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0);
  std::vector<std::size_t> comm = membership;
  double q = level_modularity(lg, comm, resolution);
  while (true) {
    comm.resize(lg.size());
    std::iota(comm.begin(), comm.end(), 0);
    if (!move_nodes(lg, comm, resolution, rng)) break;
    const std::size_t k = renumber(comm);
    const double q_next = level_modularity(lg, comm, resolution);
    if (q_next < q - 1e-12) throw std::logic_error("louvain: modularity decreased");
    q = q_next;
    for (auto& m : membership) m = comm[m];
    lg = coarsen(lg, comm, k);
  }

  // Dense ids by first appearance in id order.
  std::map<std::string, std::size_t> raw;
  for (std::size_t i = 0; i < g.node_count(); ++i) raw.emplace(g.node(i).id, membership[i]);
  CommunityPartition p = partition_from_labels(raw);
  p.modularity = modularity(g, p, resolution);
  if (std::abs(p.modularity - q) > 1e-9 * std::max(1.0, std::abs(q)))
    throw std::logic_error("louvain: modularity bookkeeping disagrees with recomputation");
  return p;
}

double adjusted_rand_index(const CommunityPartition& a, const CommunityPartition& b) {
  if (a.assignment.size() != b.assignment.size())
    throw InvalidArgument("adjusted_rand_index: node sets differ");
  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> rows, cols;
  auto ib = b.assignment.begin();
  for (const auto& [id, ca] : a.assignment) {
    if (ib->first != id) throw InvalidArgument("adjusted_rand_index: node sets differ");
    ++cells[{ca, ib->second}];
    ++rows[ca];
    ++cols[ib->second];
    ++ib;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, n] : cells) index += static_cast<double>(pairs(n));
  for (const auto& [key, n] : rows) sum_rows += static_cast<double>(pairs(n));
  for (const auto& [key, n] : cols) sum_cols += static_cast<double>(pairs(n));
  const double total = static_cast<double>(pairs(static_cast<long long>(a.assignment.size())));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  // Zero only when both partitions are the same trivial split.
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

HourlyShape daily_profile(std::span<const TimeSeries* const> members) {
  HourlyShape sum{}, count{};
  for (const TimeSeries* ts : members)
    for (std::size_t i = 0; i < ts->values.size(); ++i) {
      const std::int64_t t = ts->t0 + static_cast<std::int64_t>(i) * ts->bin_width;
      const auto hour = static_cast<std::size_t>(((t % 86400) + 86400) % 86400 / 3600);
      sum[hour] += ts->values[i];
      count[hour] += 1.0;
    }
  HourlyShape profile{};
  double total = 0.0;
  for (std::size_t h = 0; h < 24; ++h) {
    profile[h] = count[h] > 0.0 ? sum[h] / count[h] : 0.0;
    total += profile[h];
  }
  if (!(total > 0.0)) {
    profile.fill(1.0 / 24.0);
    return profile;
  }
  for (double& v : profile) v /= total;
  return profile;
}

std::map<int, ScenarioLabel> label_scenarios(const CommunityPartition& p, const SeriesMap& series,
                                             const std::vector<ReferenceProfile>& references,
                                             double low_confidence_distance) {
  if (references.empty()) throw InvalidArgument("label_scenarios: no reference profiles");
  std::map<int, std::vector<const TimeSeries*>> members;
  const TimeSeries* first = nullptr;
  for (const auto& [id, c] : p.assignment) {
    auto it = series.find(id);
    if (it == series.end()) continue;
    const TimeSeries& ts = it->second;
    validate(ts);
    if (first == nullptr) {
      first = &ts;
      if (ts.bin_width > 3600) throw InvalidArgument("label_scenarios: bin_width must be <= 3600 s");
      if (ts.bin_width * static_cast<std::int64_t>(ts.values.size()) < 86400)
        throw InvalidArgument("label_scenarios: series span less than one day");
    } else if (ts.bin_width != first->bin_width || ts.t0 != first->t0 ||
               ts.values.size() != first->values.size()) {
      throw InvalidArgument("label_scenarios: series do not share bin_width and span");
    }
    members[c].push_back(&ts);
  }

  std::map<int, ScenarioLabel> labels;
  for (const auto& [c, group] : members) {
    const HourlyShape profile = daily_profile(group);
    ScenarioLabel best{"", std::numeric_limits<double>::infinity(), false};
    for (const auto& ref : references) {
      double d2 = 0.0;
      for (std::size_t h = 0; h < 24; ++h) d2 += (profile[h] - ref.shape[h]) * (profile[h] - ref.shape[h]);
      const double d = std::sqrt(d2);
      if (d < best.distance) best = {ref.label, d, false};
    }
    best.low_confidence = best.distance > low_confidence_distance;
    labels.emplace(c, std::move(best));
  }
  return labels;
}

void write_partition_csv(std::ostream& out, const CommunityPartition& p,
                         const std::map<int, ScenarioLabel>& labels) {
  out << "node_id,community_id,scenario_label\n";
  for (const auto& [id, c] : p.assignment) {
    out << id << ',' << c << ',';
    if (auto it = labels.find(c); it != labels.end()) out << it->second.label;
    out << '\n';
  }
}

}  // namespace cellgraph
