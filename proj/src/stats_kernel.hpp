#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cellgraph/error.hpp"

namespace cellgraph::detail {

inline bool is_constant(std::span<const double> x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

inline double mean(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

// Deviations from the mean and their sum of squares. The correlation matrix
// reuses these so each entry is computed by the same operations as pearson().
struct Centered {
  std::vector<double> dev;
  double sum_sq = 0.0;
};

inline Centered center(std::span<const double> x) {
  Centered c;
  const double m = mean(x);
  c.dev.reserve(x.size());
  for (double v : x) c.dev.push_back(v - m);
  for (double d : c.dev) c.sum_sq += d * d;
  return c;
}

inline double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

inline double correlate_centered(const Centered& a, const Centered& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.dev.size(); ++i) num += a.dev[i] * b.dev[i];
  return clamp_unit(num / std::sqrt(a.sum_sq * b.sum_sq));
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
  if (x.size() < 2) throw InvalidArgument("pearson: need at least 2 samples");
  if (is_constant(x) || is_constant(y)) throw UndefinedStatistic("pearson: zero variance");
  return correlate_centered(center(x), center(y));
}

}  // namespace cellgraph::detail
