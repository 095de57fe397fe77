#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cellgraph/graph.hpp"

namespace cellgraph {

using IndexEdge = std::pair<std::size_t, std::size_t>;

// Proof of the planarity verdict. A planar graph carries a combinatorial
// embedding (the cyclic order of neighbours around every node); a non-planar
// one carries the edges of a subdivided K5 or K3,3 contained in the graph.
struct PlanarCertificate {
  bool is_planar = false;
  std::vector<std::vector<std::size_t>> embedding;  // per node, neighbour indices
  std::vector<IndexEdge> kuratowski;
};

// Boyer-Myrvold planarity test with certificate.
PlanarCertificate is_planar(const WeightedGraph& g);
PlanarCertificate is_planar(std::size_t node_count, std::span<const IndexEdge> edges);

// Verdict only; cheaper, used inside the PMFG loop.
bool planar(std::size_t node_count, std::span<const IndexEdge> edges);

enum class KuratowskiKind { invalid, k5, k33 };

// Checks that `rotation` is a rotation system over exactly the given edges
// whose face count satisfies Euler's formula V - E + F = 2 on every connected
// component (an isolated node counts as one face).
bool verify_embedding(std::size_t node_count, std::span<const IndexEdge> edges,
                      const std::vector<std::vector<std::size_t>>& rotation);

// Classifies `witness` as a subdivision of K5 or K3,3 whose edges all belong to
// `edges`; KuratowskiKind::invalid otherwise.
KuratowskiKind classify_kuratowski(std::size_t node_count, std::span<const IndexEdge> edges,
                                   std::span<const IndexEdge> witness);

// Independent check of a certificate against the graph it claims to describe.
bool verify_certificate(std::size_t node_count, std::span<const IndexEdge> edges,
                        const PlanarCertificate& cert);
bool verify_certificate(const WeightedGraph& g, const PlanarCertificate& cert);

std::vector<IndexEdge> index_edges(const WeightedGraph& g);

}  // namespace cellgraph
