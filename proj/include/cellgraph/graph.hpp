#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cellgraph {

enum class NodeKind { bs, app, user };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view s);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::bs;
  std::optional<double> lat;
  std::optional<double> lon;
  std::optional<double> size;
  std::optional<int> community;

  friend bool operator==(const Node&, const Node&) = default;
};

// Endpoints are node indices; u < v always.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected weighted graph. Node and edge order is insertion order,
// which keeps exports byte-stable.
class WeightedGraph {
 public:
  // Throws InvalidArgument on an empty or duplicate id.
  std::size_t add_node(Node node);
  // Throws InvalidArgument on unknown endpoints, self-loops, duplicate pairs or
  // a non-finite weight.
  void add_edge(std::size_t u, std::size_t v, double w);
  void add_edge(std::string_view u, std::string_view v, double w);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Node& node(std::size_t i) { return nodes_.at(i); }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  bool has_edge(std::size_t u, std::size_t v) const;
  std::size_t degree(std::size_t i) const { return degree_.at(i); }
  double total_weight() const;

  // Set by constructions that guarantee planarity (PMFG).
  bool certified_planar() const noexcept { return certified_planar_; }
  void set_certified_planar(bool planar) noexcept { certified_planar_ = planar; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t pair_key(std::size_t u, std::size_t v);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_set<std::uint64_t> pairs_;
  bool certified_planar_ = false;
};

enum class GraphFormat { graphml, dot, json };

std::string_view to_string(GraphFormat format);
GraphFormat parse_graph_format(std::string_view s);
std::string_view file_extension(GraphFormat format);

// GraphML carries data keys weight (edge) and kind/lat/lon/size/community
// (node); DOT colours nodes by community; JSON is
// {"nodes":[{id,kind,lat?,lon?,size?,community?}],"edges":[{u,v,w}]}.
void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format);
std::string export_graph(const WeightedGraph& g, GraphFormat format);

// Inverse of the JSON export. Throws SchemaError on malformed documents.
WeightedGraph import_json(std::string_view document);
WeightedGraph read_graph_json(std::istream& in);

}  // namespace cellgraph
