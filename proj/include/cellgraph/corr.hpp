#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cellgraph/series.hpp"

namespace cellgraph {

// Pearson coefficient, clamped to [-1, 1]. Throws InvalidArgument on length
// mismatch or fewer than 2 samples, UndefinedStatistic on a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

// Dense symmetric matrix over entities in lexicographic id order.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  // Takes a row-major n*n matrix; throws InvalidArgument unless the invariants
  // (unit diagonal, symmetry, entries within [-1, 1]) hold.
  CorrelationMatrix(std::vector<std::string> entities, std::vector<double> values);

  std::size_t size() const noexcept { return entities_.size(); }
  const std::vector<std::string>& entities() const noexcept { return entities_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  std::size_t index_of(const std::string& id) const;

  friend bool operator==(const CorrelationMatrix&, const CorrelationMatrix&) = default;

 private:
  std::vector<std::string> entities_;
  std::vector<double> values_;
};

struct CorrelationResult {
  CorrelationMatrix matrix;
  std::vector<std::string> excluded;  // zero-variance entities, sorted
};

// Pairwise Pearson matrix. All series must share bin_width, t0 and length.
// Constant series are dropped with a logged warning; fewer than 2 survivors is
// an error. Rows are split across `threads` workers (0 = hardware concurrency);
// every entry is a pure function of its two series.
CorrelationResult correlation_matrix(const SeriesMap& series, unsigned threads = 1);

// Header `id,<e1>,<e2>,...` then one `<ei>,r_i1,r_i2,...` row per entity.
void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m);
CorrelationMatrix read_matrix_csv(std::istream& in);

}  // namespace cellgraph
