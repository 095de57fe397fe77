#include "cellgraph/planarity.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

namespace cellgraph {
namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(std::size_t n, std::span<const IndexEdge> edges) {
  BoostGraph g(n);
  int index = 0;
  for (const auto& [u, v] : edges) {
    auto [e, added] = boost::add_edge(u, v, g);
    boost::put(boost::edge_index, g, e, index++);
  }
  return g;
}

std::vector<IndexEdge> to_index_edges(const BoostGraph& g, const std::vector<BoostEdge>& es) {
  std::vector<IndexEdge> out;
  out.reserve(es.size());
  for (const auto& e : es) {
    auto u = static_cast<std::size_t>(boost::source(e, g));
    auto v = static_cast<std::size_t>(boost::target(e, g));
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Drops witness edges one at a time while the rest stays non-planar. An
// edge-minimal non-planar graph is a subdivision of K5 or K3,3.
std::vector<IndexEdge> minimise_witness(std::size_t n, std::vector<IndexEdge> witness) {
  for (std::size_t i = 0; i < witness.size();) {
    std::vector<IndexEdge> trial = witness;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!planar(n, trial)) {
      witness = std::move(trial);
    } else {
      ++i;
    }
  }
  return witness;
}

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<IndexEdge> index_edges(const WeightedGraph& g) {
  std::vector<IndexEdge> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

bool planar(std::size_t node_count, std::span<const IndexEdge> edges) {
  if (node_count <= 4 || edges.size() <= 8) return true;
  if (node_count >= 3 && edges.size() > 3 * node_count - 6) return false;
  const BoostGraph g = to_boost(node_count, edges);
  return boost::boyer_myrvold_planarity_test(g);
}

PlanarCertificate is_planar(std::size_t node_count, std::span<const IndexEdge> edges) {
  const BoostGraph g = to_boost(node_count, edges);
  std::vector<std::vector<BoostEdge>> storage(node_count);
  auto embedding = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, g));
  std::vector<BoostEdge> kuratowski;

  PlanarCertificate cert;
  cert.is_planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = g, boost::boyer_myrvold_params::embedding = embedding,
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

  if (cert.is_planar) {
    cert.embedding.resize(node_count);
    for (std::size_t v = 0; v < node_count; ++v)
      for (const auto& e : storage[v]) {
        auto a = static_cast<std::size_t>(boost::source(e, g));
        auto b = static_cast<std::size_t>(boost::target(e, g));
        cert.embedding[v].push_back(a == v ? b : a);
      }
    return cert;
  }

  cert.kuratowski = to_index_edges(g, kuratowski);
  if (classify_kuratowski(node_count, edges, cert.kuratowski) == KuratowskiKind::invalid) {
    cert.kuratowski = minimise_witness(node_count, cert.kuratowski);
    if (classify_kuratowski(node_count, edges, cert.kuratowski) == KuratowskiKind::invalid)
      throw std::logic_error("planarity: could not extract a Kuratowski subgraph");
  }
  return cert;
}

PlanarCertificate is_planar(const WeightedGraph& g) {
  const auto edges = index_edges(g);
  return is_planar(g.node_count(), edges);
}

bool verify_embedding(std::size_t n, std::span<const IndexEdge> edges,
                      const std::vector<std::vector<std::size_t>>& rotation) {
  if (rotation.size() != n) return false;
  std::vector<std::set<std::size_t>> adj(n);
  Dsu dsu(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v || !adj[u].insert(v).second) return false;
    adj[v].insert(u);
    dsu.unite(u, v);
  }
  // position[v][w] = index of neighbour w in v's rotation
  std::vector<std::map<std::size_t, std::size_t>> position(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (rotation[v].size() != adj[v].size()) return false;
    for (std::size_t k = 0; k < rotation[v].size(); ++k) {
      const std::size_t w = rotation[v][k];
      if (!adj[v].contains(w) || !position[v].emplace(w, k).second) return false;
    }
  }

  // Trace faces: dart (u -> v) continues as (v -> successor of u around v).
  std::set<IndexEdge> seen;
  std::map<std::size_t, long> faces;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : rotation[u]) {
      if (seen.contains({u, v})) continue;
      ++faces[dsu.find(u)];
      std::size_t a = u, b = v;
      while (seen.insert({a, b}).second) {
        const auto& rot = rotation[b];
        const std::size_t next = rot[(position[b][a] + 1) % rot.size()];
        a = b;
        b = next;
      }
    }

  std::map<std::size_t, long> vertices, edge_count;
  for (std::size_t v = 0; v < n; ++v) ++vertices[dsu.find(v)];
  for (const auto& [u, v] : edges) ++edge_count[dsu.find(u)];
  for (const auto& [root, nv] : vertices) {
    const long ne = edge_count[root];
    const long nf = ne == 0 ? 1 : faces[root];
    if (nv - ne + nf != 2) return false;
  }
  return true;
}

KuratowskiKind classify_kuratowski(std::size_t n, std::span<const IndexEdge> edges,
                                   std::span<const IndexEdge> witness) {
  std::set<IndexEdge> graph_edges;
  for (const auto& [u, v] : edges) graph_edges.insert({std::min(u, v), std::max(u, v)});

  std::vector<std::vector<std::size_t>> adj(n);
  std::set<IndexEdge> used;
  for (const auto& [u, v] : witness) {
    const IndexEdge key{std::min(u, v), std::max(u, v)};
    if (u >= n || v >= n || u == v || !graph_edges.contains(key) || !used.insert(key).second)
      return KuratowskiKind::invalid;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  std::vector<std::size_t> branch;
  std::size_t branch_degree = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t d = adj[v].size();
    if (d == 0 || d == 2) continue;
    if (d != 3 && d != 4) return KuratowskiKind::invalid;
    if (branch_degree != 0 && d != branch_degree) return KuratowskiKind::invalid;
    branch_degree = d;
    branch.push_back(v);
  }
  const bool k5 = branch_degree == 4 && branch.size() == 5;
  const bool k33 = branch_degree == 3 && branch.size() == 6;
  if (!k5 && !k33) return KuratowskiKind::invalid;

  // Follow each branch-to-branch path through degree-2 nodes.
  std::vector<bool> is_branch(n, false);
  for (std::size_t b : branch) is_branch[b] = true;
  std::set<IndexEdge> walked;
  std::set<IndexEdge> links;
  for (std::size_t b : branch)
    for (std::size_t first : adj[b]) {
      std::size_t prev = b, cur = first;
      if (walked.contains({std::min(prev, cur), std::max(prev, cur)})) continue;
      while (true) {
        walked.insert({std::min(prev, cur), std::max(prev, cur)});
        if (is_branch[cur]) break;
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
      }
      if (cur == b || !links.insert({std::min(b, cur), std::max(b, cur)}).second)
        return KuratowskiKind::invalid;
    }
  // Every witness edge must lie on some branch path (no detached cycles).
  if (walked.size() != used.size()) return KuratowskiKind::invalid;

  if (k5) return links.size() == 10 ? KuratowskiKind::k5 : KuratowskiKind::invalid;

  if (links.size() != 9) return KuratowskiKind::invalid;
  // Bipartition: the branch nodes not linked to branch[0] form its side.
  std::vector<std::size_t> side_a, side_b;
  for (std::size_t b : branch) {
    const bool linked = links.contains({std::min(branch[0], b), std::max(branch[0], b)});
    (b == branch[0] || !linked ? side_a : side_b).push_back(b);
  }
  if (side_a.size() != 3 || side_b.size() != 3) return KuratowskiKind::invalid;
  for (std::size_t a : side_a)
    for (std::size_t b : side_b)
      if (!links.contains({std::min(a, b), std::max(a, b)})) return KuratowskiKind::invalid;
  return KuratowskiKind::k33;
}

bool verify_certificate(std::size_t n, std::span<const IndexEdge> edges, const PlanarCertificate& cert) {
  if (cert.is_planar) return cert.kuratowski.empty() && verify_embedding(n, edges, cert.embedding);
  return cert.embedding.empty() && classify_kuratowski(n, edges, cert.kuratowski) != KuratowskiKind::invalid;
}

bool verify_certificate(const WeightedGraph& g, const PlanarCertificate& cert) {
  const auto edges = index_edges(g);
  return verify_certificate(g.node_count(), edges, cert);
}

}  // namespace cellgraph
