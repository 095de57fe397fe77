#include "cellgraph/graph.hpp"

#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cellgraph/error.hpp"
#include "text.hpp"

namespace cellgraph {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::bs:
      return "bs";
    case NodeKind::app:
      return "app";
    case NodeKind::user:
      return "user";
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view s) {
  for (auto k : {NodeKind::bs, NodeKind::app, NodeKind::user})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown node kind '" + std::string(s) + "'");
}

std::uint64_t WeightedGraph::pair_key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

std::size_t WeightedGraph::add_node(Node node) {
  if (node.id.empty()) throw InvalidArgument("node id must not be empty");
  const std::size_t i = nodes_.size();
  if (!index_.emplace(node.id, i).second) throw InvalidArgument("duplicate node id " + node.id);
  nodes_.push_back(std::move(node));
  degree_.push_back(0);
  return i;
}

void WeightedGraph::add_edge(std::size_t u, std::size_t v, double w) {
  if (u >= nodes_.size() || v >= nodes_.size()) throw InvalidArgument("edge endpoint out of range");
  if (u == v) throw InvalidArgument("self-loop on " + nodes_[u].id);
  if (!std::isfinite(w)) throw InvalidArgument("edge weight must be finite");
  if (!pairs_.insert(pair_key(u, v)).second)
    throw InvalidArgument("duplicate edge " + nodes_[u].id + " -- " + nodes_[v].id);
  edges_.push_back({std::min(u, v), std::max(u, v), w});
  ++degree_[u];
  ++degree_[v];
}

void WeightedGraph::add_edge(std::string_view u, std::string_view v, double w) {
  auto iu = find(u);
  auto iv = find(v);
  if (!iu || !iv) throw InvalidArgument("edge references unknown node");
  add_edge(*iu, *iv, w);
}

std::optional<std::size_t> WeightedGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool WeightedGraph::has_edge(std::size_t u, std::size_t v) const {
  return u != v && pairs_.contains(pair_key(u, v));
}

double WeightedGraph::total_weight() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.w;
  return sum;
}

std::string_view to_string(GraphFormat format) {
  switch (format) {
    case GraphFormat::graphml:
      return "graphml";
    case GraphFormat::dot:
      return "dot";
    case GraphFormat::json:
      return "json";
  }
  return "?";
}

GraphFormat parse_graph_format(std::string_view s) {
  for (auto f : {GraphFormat::graphml, GraphFormat::dot, GraphFormat::json})
    if (to_string(f) == s) return f;
  throw InvalidArgument("unknown graph format '" + std::string(s) + "'");
}

std::string_view file_extension(GraphFormat format) { return to_string(format); }

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

void write_graphml(std::ostream& out, const WeightedGraph& g) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
         "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
         "  <key id=\"lat\" for=\"node\" attr.name=\"lat\" attr.type=\"double\"/>\n"
         "  <key id=\"lon\" for=\"node\" attr.name=\"lon\" attr.type=\"double\"/>\n"
         "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"double\"/>\n"
         "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n"
         "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const auto& n : g.nodes()) {
    out << "    <node id=\"" << xml_escape(n.id) << "\">";
    out << "<data key=\"kind\">" << to_string(n.kind) << "</data>";
    if (n.lat) out << "<data key=\"lat\">" << text::format_double(*n.lat) << "</data>";
    if (n.lon) out << "<data key=\"lon\">" << text::format_double(*n.lon) << "</data>";
    if (n.size) out << "<data key=\"size\">" << text::format_double(*n.size) << "</data>";
    if (n.community) out << "<data key=\"community\">" << *n.community << "</data>";
    out << "</node>\n";
  }
  for (const auto& e : g.edges()) {
    out << "    <edge source=\"" << xml_escape(g.node(e.u).id) << "\" target=\""
        << xml_escape(g.node(e.v).id) << "\"><data key=\"weight\">" << text::format_double(e.w)
        << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const WeightedGraph& g) {
  // ColorBrewer set312 has colours 1..12; community c maps to (c mod 12) + 1.
  out << "graph G {\n  node [style=filled, colorscheme=set312];\n";
  for (const auto& n : g.nodes()) {
    out << "  " << dot_quote(n.id) << " [kind=" << to_string(n.kind);
    if (n.lat) out << ", lat=" << text::format_double(*n.lat);
    if (n.lon) out << ", lon=" << text::format_double(*n.lon);
    if (n.size) out << ", size=" << text::format_double(*n.size);
    if (n.community) out << ", community=" << *n.community << ", fillcolor=" << (*n.community % 12) + 1;
    out << "];\n";
  }
  for (const auto& e : g.edges())
    out << "  " << dot_quote(g.node(e.u).id) << " -- " << dot_quote(g.node(e.v).id)
        << " [weight=" << text::format_double(e.w) << "];\n";
  out << "}\n";
}

void write_json(std::ostream& out, const WeightedGraph& g) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  doc["edges"] = ordered_json::array();
  for (const auto& n : g.nodes()) {
    ordered_json node{{"id", n.id}, {"kind", to_string(n.kind)}};
    if (n.lat) node["lat"] = *n.lat;
    if (n.lon) node["lon"] = *n.lon;
    if (n.size) node["size"] = *n.size;
    if (n.community) node["community"] = *n.community;
    doc["nodes"].push_back(std::move(node));
  }
  for (const auto& e : g.edges())
    doc["edges"].push_back(ordered_json{{"u", g.node(e.u).id}, {"v", g.node(e.v).id}, {"w", e.w}});
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format) {
  switch (format) {
    case GraphFormat::graphml:
      write_graphml(out, g);
      break;
    case GraphFormat::dot:
      write_dot(out, g);
      break;
    case GraphFormat::json:
      write_json(out, g);
      break;
  }
}

std::string export_graph(const WeightedGraph& g, GraphFormat format) {
  std::ostringstream out;
  write_graph(out, g, format);
  return out.str();
}

WeightedGraph import_json(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("graph JSON: ") + e.what());
  }
  try {
    WeightedGraph g;
    for (const auto& jn : doc.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.kind = parse_node_kind(jn.at("kind").get<std::string>());
      if (jn.contains("lat")) n.lat = jn["lat"].get<double>();
      if (jn.contains("lon")) n.lon = jn["lon"].get<double>();
      if (jn.contains("size")) n.size = jn["size"].get<double>();
      if (jn.contains("community")) n.community = jn["community"].get<int>();
      g.add_node(std::move(n));
    }
    for (const auto& je : doc.at("edges"))
      g.add_edge(je.at("u").get<std::string>(), je.at("v").get<std::string>(), je.at("w").get<double>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("graph JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("graph JSON: ") + e.what());
  }
}

WeightedGraph read_graph_json(std::istream& in) {
  std::string doc{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return import_json(doc);
}

}  // namespace cellgraph
