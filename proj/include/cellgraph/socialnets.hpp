#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellgraph/community.hpp"
#include "cellgraph/corr.hpp"
#include "cellgraph/filter.hpp"
#include "cellgraph/graph.hpp"
#include "cellgraph/records.hpp"
#include "cellgraph/series.hpp"

namespace cellgraph {

struct PipelineConfig {
  Metric metric = Metric::bytes_total;
  std::int64_t bin_width = 3600;
  std::optional<Span> span;  // default: smallest aligned span covering the input
  Attribution attribution = Attribution::proportional;
  Ranking ranking = Ranking::value;
  double resolution = 1.0;
  std::uint64_t seed = 0;
  double min_activity = 1.0;  // entities with less total volume are dropped
  double low_confidence_distance = kDefaultLowConfidenceDistance;
  unsigned threads = 1;  // 0 = hardware concurrency

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

void validate(const PipelineConfig& cfg);

// JSON mirror of PipelineConfig. Keys: metric, bin_width, span ([begin, end]),
// attribution, ranking, resolution, seed, min_activity,
// low_confidence_distance, threads. from_json starts from `base` and only
// overrides the keys present; unknown keys throw InvalidArgument.
nlohmann::ordered_json to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& doc, PipelineConfig base = {});

struct BssnResult {
  WeightedGraph graph;
  CommunityPartition partition;
  std::map<int, ScenarioLabel> labels;
  SeriesMap series;
  CorrelationMatrix matrix;
  std::vector<std::string> excluded;  // unknown, inactive or constant cells
};

// Base-station network: per-cell series -> activity filter -> Pearson matrix
// -> PMFG -> Louvain -> scenario labels. Nodes carry cell coordinates and
// community ids. Labels are skipped (with a warning) when the series are
// shorter than a day or coarser than an hour. Throws InvalidArgument when
// fewer than 3 cells survive.
BssnResult build_bssn(std::span<const FlowRecord> records, std::span<const CellInfo> cells,
                      const PipelineConfig& cfg,
                      const std::vector<ReferenceProfile>& references = default_reference_profiles());

struct AsnResult {
  WeightedGraph graph;
  CommunityPartition partition;
  SeriesMap series;
  CorrelationMatrix matrix;
  std::vector<std::string> excluded;
};

// App network: the same pipeline keyed by app_id; node size = degree.
AsnResult build_asn(std::span<const FlowRecord> records, const PipelineConfig& cfg);

struct UsnResult {
  WeightedGraph graph;
  CommunityPartition partition;
};

// User network straight from call records: edge weight = number of calls
// between the pair inside the span, direction ignored.
UsnResult build_usn(std::span<const CallRecord> calls, const PipelineConfig& cfg);

}  // namespace cellgraph
