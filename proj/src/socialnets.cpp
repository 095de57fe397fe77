#include "cellgraph/socialnets.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "cellgraph/error.hpp"

namespace cellgraph {
namespace {

template <typename T>
T get_as(const nlohmann::json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("config: bad value for '") + key + "'");
  }
}

// Louvain needs a positive edge; without one every node is its own community.
CommunityPartition detect(const WeightedGraph& g, const PipelineConfig& cfg) {
  const bool any_positive =
      std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w > 0.0; });
  if (any_positive) return louvain(g, cfg.resolution, cfg.seed);
  spdlog::warn("graph has no positive-weight edge; using singleton communities");
  std::map<std::string, std::size_t> singletons;
  for (std::size_t i = 0; i < g.node_count(); ++i) singletons.emplace(g.node(i).id, i);
  return partition_from_labels(singletons);
}

void attach_communities(WeightedGraph& g, const CommunityPartition& p) {
  for (std::size_t i = 0; i < g.node_count(); ++i) g.node(i).community = p.assignment.at(g.node(i).id);
}

struct Filtered {
  SeriesMap series;
  CorrelationMatrix matrix;
  std::vector<std::string> excluded;
};

// aggregate -> activity filter -> correlation matrix
Filtered correlate_entities(std::span<const FlowRecord> records, AggregationKey key,
                            const PipelineConfig& cfg, const char* what) {
  if (records.empty()) throw InvalidArgument(std::string("need at least 3 active ") + what + "s, got none");
  AggregateOptions opts;
  opts.key = key;
  opts.metric = cfg.metric;
  opts.bin_width = cfg.bin_width;
  opts.span = cfg.span ? *cfg.span : covering_span(records, cfg.bin_width);
  opts.attribution = cfg.attribution;
  opts.threads = cfg.threads;

  Filtered out;
  for (auto& [id, ts] : aggregate(records, opts)) {
    double total = 0.0;
    for (double v : ts.values) total += v;
    if (total < cfg.min_activity) {
      out.excluded.push_back(id);
      continue;
    }
    out.series.emplace(id, std::move(ts));
  }
  if (!out.excluded.empty())
    spdlog::warn("dropped {} {}(s) below min_activity {}", out.excluded.size(), what, cfg.min_activity);
  if (out.series.size() < 3)
    throw InvalidArgument("need at least 3 active " + std::string(what) + "s, got " +
                          std::to_string(out.series.size()));
  auto corr = correlation_matrix(out.series, cfg.threads);
  if (corr.matrix.size() < 3)
    throw InvalidArgument("need at least 3 " + std::string(what) + "s with varying traffic, got " +
                          std::to_string(corr.matrix.size()));
  for (const auto& id : corr.excluded) out.series.erase(id);
  out.excluded.insert(out.excluded.end(), corr.excluded.begin(), corr.excluded.end());
  std::sort(out.excluded.begin(), out.excluded.end());
  out.matrix = std::move(corr.matrix);
  return out;
}

}  // namespace

void validate(const PipelineConfig& cfg) {
  if (cfg.bin_width <= 0) throw InvalidArgument("config: bin_width must be > 0");
  if (!(cfg.resolution > 0.0) || !std::isfinite(cfg.resolution))
    throw InvalidArgument("config: resolution must be > 0");
  if (!(cfg.min_activity >= 0.0)) throw InvalidArgument("config: min_activity must be >= 0");
  if (!(cfg.low_confidence_distance >= 0.0)) throw InvalidArgument("config: low_confidence_distance must be >= 0");
  if (cfg.span && cfg.span->begin >= cfg.span->end) throw InvalidArgument("config: span must satisfy begin < end");
}

nlohmann::ordered_json to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["metric"] = to_string(cfg.metric);
  j["bin_width"] = cfg.bin_width;
  if (cfg.span) j["span"] = {cfg.span->begin, cfg.span->end};
  j["attribution"] = to_string(cfg.attribution);
  j["ranking"] = to_string(cfg.ranking);
  j["resolution"] = cfg.resolution;
  j["seed"] = cfg.seed;
  j["min_activity"] = cfg.min_activity;
  j["low_confidence_distance"] = cfg.low_confidence_distance;
  j["threads"] = cfg.threads;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& doc, PipelineConfig cfg) {
  if (!doc.is_object()) throw InvalidArgument("config: expected a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "metric") {
      cfg.metric = parse_metric(get_as<std::string>(v, "metric"));
    } else if (key == "bin_width") {
      cfg.bin_width = get_as<std::int64_t>(v, "bin_width");
    } else if (key == "span") {
      auto s = get_as<std::vector<std::int64_t>>(v, "span");
      if (s.size() != 2) throw InvalidArgument("config: span must be [begin, end]");
      cfg.span = Span{s[0], s[1]};
    } else if (key == "attribution") {
      cfg.attribution = parse_attribution(get_as<std::string>(v, "attribution"));
    } else if (key == "ranking") {
      cfg.ranking = parse_ranking(get_as<std::string>(v, "ranking"));
    } else if (key == "resolution") {
      cfg.resolution = get_as<double>(v, "resolution");
    } else if (key == "seed") {
      cfg.seed = get_as<std::uint64_t>(v, "seed");
    } else if (key == "min_activity") {
      cfg.min_activity = get_as<double>(v, "min_activity");
    } else if (key == "low_confidence_distance") {
      cfg.low_confidence_distance = get_as<double>(v, "low_confidence_distance");
    } else if (key == "threads") {
      cfg.threads = get_as<unsigned>(v, "threads");
    } else {
      throw InvalidArgument("config: unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

BssnResult build_bssn(std::span<const FlowRecord> records, std::span<const CellInfo> cells,
                      const PipelineConfig& cfg, const std::vector<ReferenceProfile>& references) {
  validate(cfg);
  std::unordered_map<std::string, const CellInfo*> cell_index;
  for (const auto& c : cells) cell_index.emplace(c.cell_id, &c);

  std::vector<FlowRecord> known;
  known.reserve(records.size());
  std::map<std::string, std::size_t> unknown;
  for (const auto& r : records) {
    if (cell_index.contains(r.cell_id)) {
      known.push_back(r);
    } else {
      ++unknown[r.cell_id];
    }
  }
  if (!unknown.empty())
    spdlog::warn("excluding {} cell(s) missing from the cell table, first: {}", unknown.size(),
                 unknown.begin()->first);

  Filtered f = correlate_entities(known, AggregationKey::cell, cfg, "cell");
  for (const auto& [id, n] : unknown) f.excluded.push_back(id);
  std::sort(f.excluded.begin(), f.excluded.end());

  BssnResult out;
  out.graph = pmfg(f.matrix, cfg.ranking, NodeKind::bs);
  for (std::size_t i = 0; i < out.graph.node_count(); ++i) {
    Node& n = out.graph.node(i);
    const CellInfo* c = cell_index.at(n.id);
    n.lat = c->lat;
    n.lon = c->lon;
  }
  out.partition = detect(out.graph, cfg);
  attach_communities(out.graph, out.partition);

  const TimeSeries& any = f.series.begin()->second;
  if (any.bin_width <= 3600 && any.bin_width * static_cast<std::int64_t>(any.values.size()) >= 86400) {
    out.labels = label_scenarios(out.partition, f.series, references, cfg.low_confidence_distance);
  } else {
    spdlog::warn("skipping scenario labels: need >= 1 day of bins no wider than 3600 s");
  }
  out.series = std::move(f.series);
  out.matrix = std::move(f.matrix);
  out.excluded = std::move(f.excluded);
  return out;
}

AsnResult build_asn(std::span<const FlowRecord> records, const PipelineConfig& cfg) {
  validate(cfg);
  Filtered f = correlate_entities(records, AggregationKey::app, cfg, "app");
  AsnResult out;
  out.graph = pmfg(f.matrix, cfg.ranking, NodeKind::app);
  for (std::size_t i = 0; i < out.graph.node_count(); ++i)
    out.graph.node(i).size = static_cast<double>(out.graph.degree(i));
  out.partition = detect(out.graph, cfg);
  attach_communities(out.graph, out.partition);
  out.series = std::move(f.series);
  out.matrix = std::move(f.matrix);
  out.excluded = std::move(f.excluded);
  return out;
}

UsnResult build_usn(std::span<const CallRecord> calls, const PipelineConfig& cfg) {
  validate(cfg);
  std::map<std::pair<std::string, std::string>, double> counts;
  std::map<std::string, std::size_t> users;
  for (const auto& c : calls) {
    if (cfg.span && (c.t_start < cfg.span->begin || c.t_start >= cfg.span->end)) continue;
    if (c.caller_id == c.callee_id) throw InvalidArgument("build_usn: self-call by " + c.caller_id);
    auto key = std::minmax(c.caller_id, c.callee_id);
    counts[{key.first, key.second}] += 1.0;
    users.emplace(c.caller_id, 0);
    users.emplace(c.callee_id, 0);
  }
  if (counts.empty()) throw InvalidArgument("build_usn: no calls in span");

  UsnResult out;
  for (auto& [id, index] : users) {
    Node node;
    node.id = id;
    node.kind = NodeKind::user;
    index = out.graph.add_node(std::move(node));
  }
  for (const auto& [pair, n] : counts) out.graph.add_edge(users.at(pair.first), users.at(pair.second), n);
  out.partition = detect(out.graph, cfg);
  attach_communities(out.graph, out.partition);
  return out;
}

}  // namespace cellgraph
