#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cellgraph/records.hpp"

namespace cellgraph {

// Traffic volume of one entity in fixed-width, epoch-aligned bins.
struct TimeSeries {
  std::string entity_id;
  std::int64_t t0 = 0;         // start of the first bin; t0 % bin_width == 0
  std::int64_t bin_width = 0;  // seconds
  std::vector<double> values;

  std::int64_t t_end() const noexcept {
    return t0 + bin_width * static_cast<std::int64_t>(values.size());
  }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

// Throws InvalidArgument unless the TimeSeries invariants hold.
void validate(const TimeSeries& ts);

using SeriesMap = std::map<std::string, TimeSeries>;

enum class AggregationKey { cell, user, app };
enum class Metric { bytes_total, bytes_down, bytes_up, flow_count };

// How a flow's bytes are spread over the bins it touches.
enum class Attribution {
  proportional,  // by overlap duration; zero-length flows go to the start bin
  start_bin,     // everything to the bin containing t_start
};

// Half-open [begin, end).
struct Span {
  std::int64_t begin = 0;
  std::int64_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct AggregateOptions {
  AggregationKey key = AggregationKey::cell;
  Metric metric = Metric::bytes_total;
  std::int64_t bin_width = 3600;
  Span span;
  Attribution attribution = Attribution::proportional;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Bins records per entity. Every entity whose records touch the span gets a
// series covering exactly the span. Results do not depend on `threads`: each
// entity's bins are accumulated in input record order by a single worker, and
// workers own disjoint entity sets, so no cross-worker summation happens.
SeriesMap aggregate(std::span<const FlowRecord> records, const AggregateOptions& opts);

// Smallest bin-aligned span covering every record; throws if records is empty.
Span covering_span(std::span<const FlowRecord> records, std::int64_t bin_width);

// Biased estimator r(k) = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2 for
// k = 0..max_lag.
std::vector<double> autocorrelation(const TimeSeries& ts, std::size_t max_lag);

enum class CrossEstimator {
  // Pearson coefficient of the overlapping pairs, with overlap means.
  overlap_pearson,
  // Full-series means and sums of squares, numerator over the overlap only.
  // For a == b this coincides with autocorrelation().
  biased,
};

// Correlation of a at time t against b at time t + lag * bin_width, over the
// times where both exist.
double cross_correlation(const TimeSeries& a, const TimeSeries& b, std::int64_t lag,
                         CrossEstimator estimator = CrossEstimator::overlap_pearson);

struct ConcentrationPoint {
  double population = 0.0;  // fraction of entities, p
  double share = 0.0;       // fraction of traffic, s
};

// Lorenz-style curve with entities sorted by descending total.
struct ConcentrationCurve {
  std::vector<ConcentrationPoint> points;
};

ConcentrationCurve concentration(const std::map<std::string, double>& totals);

// Traffic share of the top-p fraction of entities, linearly interpolated.
double top_share(const ConcentrationCurve& curve, double p);

// Series export: `entity_id,t0,bin_width,v0,v1,...`, one row per entity.
void write_series_csv(std::ostream& out, const SeriesMap& series);
SeriesMap read_series_csv(std::istream& in);

void write_concentration_csv(std::ostream& out, const ConcentrationCurve& curve);

// `entity_id,total` rows, as written by the subscriber generator.
void write_totals_csv(std::ostream& out, const std::map<std::string, double>& totals);
std::map<std::string, double> read_totals_csv(std::istream& in);

std::string_view to_string(AggregationKey key);
std::string_view to_string(Metric metric);
std::string_view to_string(Attribution attribution);
AggregationKey parse_key(std::string_view s);
Metric parse_metric(std::string_view s);
Attribution parse_attribution(std::string_view s);

}  // namespace cellgraph
