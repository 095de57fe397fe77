#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cellgraph/profiles.hpp"
#include "cellgraph/records.hpp"

namespace cellgraph {

struct ScenarioProfile {
  std::string label;
  HourlyShape hourly_shape{};  // sums to 1
  double amplitude = 0.0;      // mean daily bytes per cell
  double noise_sigma = 0.0;    // per-bin standard deviation as a fraction of the bin mean
};

// Throws InvalidArgument unless the shape is non-negative and sums to 1 within
// 1e-9, amplitude > 0 and noise_sigma >= 0.
void validate(const ScenarioProfile& profile);

// The four shipped scenarios with the given noise level.
std::vector<ScenarioProfile> default_scenarios(double noise_sigma = 0.1);

struct AppShare {
  std::string app_id;
  double weight = 1.0;
};

struct CityOptions {
  std::size_t cells_per_scenario = 15;
  std::size_t days = 7;
  std::int64_t bin_width = 3600;
  std::uint64_t seed = 1;
  std::int64_t t0 = 1467331200;  // 2016-07-01T00:00:00Z; must be a UTC midnight
  std::size_t users_per_cell = 20;
  std::vector<AppShare> apps = {{"web", 4}, {"video", 3}, {"im", 2}, {"social", 2}, {"game", 1}};
};

struct City {
  std::vector<FlowRecord> flows;
  std::vector<CellInfo> cells;
  std::map<std::string, std::string> truth;  // cell id -> scenario label
};

// One flow record per cell and bin. The expected volume of a bin is
// amplitude * (share of the day it covers under the hourly shape); the realised
// volume is Gaussian around it with sd noise_sigma * mean, truncated at zero.
// Each cell draws from its own stream derived from (seed, cell index).
City gen_city(std::span<const ScenarioProfile> profiles, const CityOptions& opts);

// n i.i.d. Pareto(alpha, x_min = 1) totals keyed `user-NNNNN`.
std::map<std::string, double> gen_subscribers(std::size_t n, double alpha, std::uint64_t seed);

struct CallGraph {
  std::vector<CallRecord> calls;
  std::map<std::string, int> blocks;  // user -> planted block
};

// Planted-partition call graph: each unordered user pair calls once with
// probability p_in (same block) or p_out (different blocks).
CallGraph gen_calls(std::size_t users_per_block, std::size_t blocks, double p_in, double p_out,
                    std::uint64_t seed, std::int64_t t0 = 1467331200);

// Ground truth as `entity_id,label`.
void write_truth_csv(std::ostream& out, const std::map<std::string, std::string>& truth);
void write_truth_csv(std::ostream& out, const std::map<std::string, int>& truth);

}  // namespace cellgraph
