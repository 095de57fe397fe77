#pragma once

// Brute-force reference implementations used only by tests. Each one follows
// the textbook definition directly and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Pearson from the definition, accumulated in long double.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// Biased autocorrelation estimator evaluated directly.
inline double acf(const std::vector<double>& x, std::size_t k) {
  long double m = 0;
  for (double v : x) m += v;
  m /= x.size();
  long double num = 0, den = 0;
  for (std::size_t t = 0; t < x.size(); ++t) den += (x[t] - m) * (x[t] - m);
  for (std::size_t t = 0; t + k < x.size(); ++t) num += (x[t] - m) * (x[t + k] - m);
  return static_cast<double>(num / den);
}

using Edge = std::pair<std::size_t, std::size_t>;

// Planarity by exhaustive search over rotation systems: a graph is planar iff
// some rotation system has V - E + F = 2 on every component. Only usable on
// tiny graphs (the search space is the product of (deg - 1)!).
inline bool planar_by_rotation_systems(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return comp[x] == x ? x : comp[x] = find(comp[x]);
  };
  for (auto [u, v] : edges) comp[find(u)] = find(v);
  long components_with_edges = 0;
  std::set<std::size_t> roots;
  for (auto [u, v] : edges) roots.insert(find(u));
  components_with_edges = static_cast<long>(roots.size());
  // Non-isolated vertices only; isolated ones contribute V = F = 1 each.
  long vertices = 0;
  for (std::size_t v = 0; v < n; ++v) vertices += adj[v].empty() ? 0 : 1;
  const long target_faces = 2 * components_with_edges - vertices + static_cast<long>(edges.size());
  // Euler's edge bound settles dense graphs without searching.
  if (vertices >= 3 && static_cast<long>(edges.size()) > 3 * vertices - 6) return false;

  // Fix the first neighbour of each vertex; permute the rest.
  for (auto& a : adj)
    if (a.size() > 1) std::sort(a.begin() + 1, a.end());
  while (true) {
    std::set<Edge> seen;  // directed darts already on a traced face
    long faces = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v : adj[u]) {
        if (seen.count({u, v})) continue;
        ++faces;
        std::size_t a = u, b = v;
        while (seen.insert({a, b}).second) {
          const auto& rot = adj[b];
          const auto pos = std::find(rot.begin(), rot.end(), a) - rot.begin();
          const std::size_t next = rot[(pos + 1) % rot.size()];
          a = b;
          b = next;
        }
      }
    if (faces == target_faces) return true;
    // Odometer over per-vertex permutations.
    std::size_t v = 0;
    for (; v < n; ++v) {
      if (adj[v].size() > 2 && std::next_permutation(adj[v].begin() + 1, adj[v].end())) break;
    }
    if (v == n) return false;
  }
}

// Every set partition of {0..n-1} as a label vector (restricted growth strings).
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_label) {
    if (i == n) {
      visit(labels);
      return;
    }
    for (int c = 0; c <= max_label + 1; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(max_label, c));
    }
  };
  if (n == 0) return;
  labels[0] = 0;
  rec(1, 0);
}

struct WEdge {
  std::size_t u, v;
  double w;
};

// Weighted modularity straight from the adjacency-matrix definition
// Q = 1/2W sum_ij [A_ij - k_i k_j / 2W] delta(c_i, c_j).
inline double modularity(std::size_t n, const std::vector<WEdge>& edges, const std::vector<int>& labels) {
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> k(n, 0.0);
  double two_w = 0;
  for (const auto& e : edges) {
    a[e.u][e.v] += e.w;
    a[e.v][e.u] += e.w;
    k[e.u] += e.w;
    k[e.v] += e.w;
    two_w += 2 * e.w;
  }
  double q = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (labels[i] == labels[j]) q += a[i][j] - k[i] * k[j] / two_w;
  return q / two_w;
}

inline double max_modularity(std::size_t n, const std::vector<WEdge>& edges) {
  double best = -1.0;
  for_each_partition(n, [&](const std::vector<int>& labels) { best = std::max(best, modularity(n, edges, labels)); });
  return best;
}

// Hubert-Arabie ARI from pair counts: a = together in both, b/c = together in
// one only, d = apart in both.
inline double ari_pairs(const std::vector<int>& x, const std::vector<int>& y) {
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool sx = x[i] == x[j], sy = y[i] == y[j];
      if (sx && sy) ++a;
      else if (sx) ++b;
      else if (sy) ++c;
      else ++d;
    }
  return 2.0 * (a * d - b * c) / ((a + b) * (b + d) + (a + c) * (c + d));
}

}  // namespace oracle
