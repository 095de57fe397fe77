#include "cellgraph/corr.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "cellgraph/error.hpp"
#include "stats_kernel.hpp"
#include "text.hpp"

namespace cellgraph {

double pearson(std::span<const double> x, std::span<const double> y) { return detail::pearson(x, y); }

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> entities, std::vector<double> values)
    : entities_(std::move(entities)), values_(std::move(values)) {
  const std::size_t n = entities_.size();
  if (values_.size() != n * n) throw InvalidArgument("correlation matrix: size mismatch");
  if (!std::is_sorted(entities_.begin(), entities_.end()) ||
      std::adjacent_find(entities_.begin(), entities_.end()) != entities_.end())
    throw InvalidArgument("correlation matrix: entities must be unique and sorted");
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 1.0) throw InvalidArgument("correlation matrix: diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument("correlation matrix: entry outside [-1, 1]");
      if (v != (*this)(j, i)) throw InvalidArgument("correlation matrix: not symmetric");
    }
  }
}

std::size_t CorrelationMatrix::index_of(const std::string& id) const {
  auto it = std::lower_bound(entities_.begin(), entities_.end(), id);
  if (it == entities_.end() || *it != id) throw InvalidArgument("unknown entity " + id);
  return static_cast<std::size_t>(it - entities_.begin());
}

CorrelationResult correlation_matrix(const SeriesMap& series, unsigned threads) {
  CorrelationResult result;
  const TimeSeries* ref = nullptr;
  std::vector<std::string> ids;
  std::vector<detail::Centered> centered;
  for (const auto& [id, ts] : series) {
    validate(ts);
    if (ref == nullptr) {
      ref = &ts;
    } else if (ts.bin_width != ref->bin_width || ts.t0 != ref->t0 ||
               ts.values.size() != ref->values.size()) {
      throw InvalidArgument("correlation_matrix: series " + id + " does not share bin_width and span with " +
                            ref->entity_id);
    }
    if (ts.values.size() < 2) throw InvalidArgument("correlation_matrix: series need at least 2 bins");
    if (detail::is_constant(ts.values)) {
      spdlog::warn("excluding zero-variance entity {}", id);
      result.excluded.push_back(id);
      continue;
    }
    ids.push_back(id);
    centered.push_back(detail::center(ts.values));
  }
  const std::size_t n = ids.size();
  if (n < 2) throw InvalidArgument("correlation_matrix: fewer than 2 entities with nonzero variance");

  std::vector<double> m(n * n, 0.0);
  auto rows = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i < n; i += step) {
      m[i * n + i] = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = detail::correlate_centered(centered[i], centered[j]);
    }
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    rows(0, 1);
  } else {
    // Interleaved rows balance the triangular workload.
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(rows, w, workers);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m[i * n + j] = m[j * n + i];

  result.matrix = CorrelationMatrix(std::move(ids), std::move(m));
  return result;
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m) {
  out << "id";
  for (const auto& e : m.entities()) {
    if (!text::representable(e)) throw InvalidArgument("entity id contains a separator: " + e);
    out << ',' << e;
  }
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.entities()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << text::format_double(m(i, j));
    out << '\n';
  }
}

CorrelationMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::vector<std::string_view> f;
  if (!std::getline(in, line)) throw SchemaError("matrix CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  text::split(line, ',', f);
  if (f.empty() || f[0] != "id") throw SchemaError("matrix CSV: header must start with 'id'");
  std::vector<std::string> ids(f.begin() + 1, f.end());
  const std::size_t n = ids.size();
  std::vector<double> values;
  values.reserve(n * n);
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    text::split(line, ',', f);
    if (row >= n || f.size() != n + 1 || f[0] != ids[row])
      throw ParseError(line_no, "matrix row does not match header order");
    for (std::size_t j = 1; j <= n; ++j) {
      auto v = text::parse_double(f[j]);
      if (!v) throw ParseError(line_no, "bad matrix entry");
      values.push_back(*v);
    }
    ++row;
  }
  if (row != n) throw ParseError(line_no, "matrix has " + std::to_string(row) + " rows, expected " + std::to_string(n));
  return CorrelationMatrix(std::move(ids), std::move(values));
}

}  // namespace cellgraph
