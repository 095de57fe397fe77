#pragma once

#include <string_view>

#include "cellgraph/corr.hpp"
#include "cellgraph/graph.hpp"

namespace cellgraph {

enum class Ranking {
  value,      // descending signed correlation
  abs_value,  // descending |correlation|
};

std::string_view to_string(Ranking ranking);
Ranking parse_ranking(std::string_view s);

// Planar maximally filtered graph: every pair i < j ranked by correlation
// (ties by id pair), admitted greedily while the graph stays planar, until
// 3n - 6 edges are reached or candidates run out. Edge weights are the
// correlations; nodes follow the matrix order. Throws for n < 2.
WeightedGraph pmfg(const CorrelationMatrix& m, Ranking ranking = Ranking::value,
                   NodeKind kind = NodeKind::bs);

// Keeps every pair with correlation >= theta.
WeightedGraph threshold_filter(const CorrelationMatrix& m, double theta,
                               NodeKind kind = NodeKind::bs);

}  // namespace cellgraph
