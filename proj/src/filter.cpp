#include "cellgraph/filter.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cellgraph/error.hpp"
#include "cellgraph/planarity.hpp"

namespace cellgraph {

std::string_view to_string(Ranking ranking) { return ranking == Ranking::value ? "value" : "abs_value"; }

Ranking parse_ranking(std::string_view s) {
  if (s == "value") return Ranking::value;
  if (s == "abs_value") return Ranking::abs_value;
  throw InvalidArgument("unknown ranking '" + std::string(s) + "'");
}

namespace {

WeightedGraph nodes_of(const CorrelationMatrix& m, NodeKind kind) {
  WeightedGraph g;
  for (const auto& id : m.entities()) {
    Node node;
    node.id = id;
    node.kind = kind;
    g.add_node(std::move(node));
  }
  return g;
}

}  // namespace

WeightedGraph pmfg(const CorrelationMatrix& m, Ranking ranking, NodeKind kind) {
  const std::size_t n = m.size();
  if (n < 2) throw InvalidArgument("pmfg: need at least 2 entities");

  struct Candidate {
    double key;
    std::size_t i, j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      candidates.push_back({ranking == Ranking::value ? m(i, j) : std::abs(m(i, j)), i, j});
  // Entities are sorted, so index order is lexicographic id-pair order.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return a.key > b.key;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  const std::size_t target = n == 2 ? 1 : 3 * n - 6;
  std::vector<IndexEdge> admitted;
  admitted.reserve(target);
  for (const auto& c : candidates) {
    if (admitted.size() == target) break;
    admitted.emplace_back(c.i, c.j);
    if (!planar(n, admitted)) admitted.pop_back();
  }

  WeightedGraph g = nodes_of(m, kind);
  for (const auto& [i, j] : admitted) g.add_edge(i, j, m(i, j));
  g.set_certified_planar(true);
  return g;
}

WeightedGraph threshold_filter(const CorrelationMatrix& m, double theta, NodeKind kind) {
  if (std::isnan(theta)) throw InvalidArgument("threshold_filter: theta is NaN");
  WeightedGraph g = nodes_of(m, kind);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) >= theta) g.add_edge(i, j, m(i, j));
  return g;
}

}  // namespace cellgraph
