#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "cellgraph/graph.hpp"
#include "cellgraph/profiles.hpp"
#include "cellgraph/series.hpp"

namespace cellgraph {

struct CommunityPartition {
  std::map<std::string, int> assignment;  // node id -> community in 0..k-1
  int k = 0;
  double modularity = 0.0;

  friend bool operator==(const CommunityPartition&, const CommunityPartition&) = default;
};

// Builds a partition from arbitrary labels, renumbering communities densely in
// order of first appearance by node id. modularity is left at 0.
template <typename Label>
CommunityPartition partition_from_labels(const std::map<std::string, Label>& labels) {
  CommunityPartition p;
  std::map<Label, int> dense;
  for (const auto& [id, label] : labels) {
    auto [it, fresh] = dense.try_emplace(label, p.k);
    if (fresh) ++p.k;
    p.assignment.emplace(id, it->second);
  }
  return p;
}

// Weighted Newman-Girvan modularity
//   Q = sum_c [ w_c / W - resolution * (s_c / 2W)^2 ]
// with w_c the intra-community weight, s_c the summed node strength and W the
// total weight. Negative-weight edges are left out (with a warning). Throws
// InvalidArgument if no positive edge exists or the partition does not cover
// exactly the graph's nodes.
double modularity(const WeightedGraph& g, const CommunityPartition& p, double resolution = 1.0);

// Two-phase Louvain. Nodes are visited in a seeded random order; a node moves
// only when that raises Q by more than 1e-9, to the best neighbouring community
// (ties to the smallest id). The returned modularity is recomputed with
// modularity() and checked against the optimiser's own bookkeeping.
CommunityPartition louvain(const WeightedGraph& g, double resolution = 1.0, std::uint64_t seed = 0);

// Adjusted Rand index; 1 for identical partitions up to relabelling. Throws
// InvalidArgument when the node sets differ.
double adjusted_rand_index(const CommunityPartition& a, const CommunityPartition& b);

struct ScenarioLabel {
  std::string label;
  double distance = 0.0;  // Euclidean distance to the chosen reference
  bool low_confidence = false;
};

inline constexpr double kDefaultLowConfidenceDistance = 0.05;

// Mean traffic per hour of day (UTC), normalised to unit sum; a series with no
// traffic yields the flat profile.
HourlyShape daily_profile(std::span<const TimeSeries* const> members);

// Labels each community with the reference profile nearest to its members'
// averaged daily profile. Series must span at least one day with
// bin_width <= 3600 s; members without a series are ignored.
std::map<int, ScenarioLabel> label_scenarios(
    const CommunityPartition& p, const SeriesMap& series,
    const std::vector<ReferenceProfile>& references = default_reference_profiles(),
    double low_confidence_distance = kDefaultLowConfidenceDistance);

// `node_id,community_id,scenario_label`; the label column is empty when
// `labels` has no entry for the community.
void write_partition_csv(std::ostream& out, const CommunityPartition& p,
                         const std::map<int, ScenarioLabel>& labels = {});

}  // namespace cellgraph
