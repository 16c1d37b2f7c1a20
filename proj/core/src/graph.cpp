#include "voytop/graph.hpp"

#include <algorithm>
#include <map>

#include "voytop/errors.hpp"

namespace voytop {

namespace {

std::size_t variable_index(const CategoryTable& meta, const std::string& var) {
  for (std::size_t i = 0; i < meta.variables.size(); ++i)
    if (meta.variables[i] == var) return i;
  throw ArgumentError("category graph: unknown variable '" + var + "'");
}

// Figure palette: hands yellow, subjects green, topics red, composite white.
std::string partition_color(const std::string& partition) {
  if (partition == "hand") return "yellow";
  if (partition == "subject") return "green";
  if (partition == "topic") return "red";
  if (partition == "composite") return "white";
  return "lightgray";
}

}  // namespace

CategoryGraph build_category_graph(const CategoryTable& meta, const std::string& var_a,
                                   const std::string& var_b) {
  meta.validate();
  const auto ia = variable_index(meta, var_a);
  const auto ib = variable_index(meta, var_b);
  if (ia == ib) throw ArgumentError("category graph: variables must differ");

  std::map<std::string, std::string> nodes;  // id -> partition
  std::map<std::pair<std::string, std::string>, long> weights;
  for (const auto& row : meta.values) {
    const std::string a = var_a + ":" + row[ia];
    const std::string b = var_b + ":" + row[ib];
    nodes[a] = var_a;
    nodes[b] = var_b;
    ++weights[{a, b}];
  }

  CategoryGraph g;
  for (const auto& [id, partition] : nodes) {
    const auto colon = id.find(':');
    g.nodes.push_back({id, partition, id.substr(colon + 1)});
  }
  for (const auto& [pair, w] : weights) g.edges.push_back({pair.first, pair.second, w});
  return g;
}

CategoryGraph build_composite_graph(const CategoryTable& meta, const std::string& topic_var,
                                    const std::string& subject_var, const std::string& hand_var) {
  meta.validate();
  const auto it = variable_index(meta, topic_var);
  const auto is = variable_index(meta, subject_var);
  const auto ih = variable_index(meta, hand_var);

  std::map<std::string, std::string> nodes;
  std::map<std::pair<std::string, std::string>, long> weights;
  for (const auto& row : meta.values) {
    const std::string hand = hand_var + ":" + row[ih];
    const std::string composite = row[is] + "-" + row[it];
    nodes[hand] = hand_var;
    nodes[composite] = "composite";
    ++weights[{hand, composite}];
  }

  CategoryGraph g;
  for (const auto& [id, partition] : nodes) {
    const auto colon = id.find(':');
    g.nodes.push_back(
        {id, partition, colon == std::string::npos ? id : id.substr(colon + 1)});
  }
  for (const auto& [pair, w] : weights) g.edges.push_back({pair.first, pair.second, w});
  return g;
}

std::string export_dot(const CategoryGraph& graph) {
  auto nodes = graph.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  auto edges = graph.edges;
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.a, a.b) < std::tie(b.a, b.b);
  });

  std::string out = "graph categories {\n";
  out += "  node [style=filled];\n";
  for (const auto& n : nodes) {
    out += "  \"" + n.id + "\" [label=\"" + n.label + "\", partition=\"" + n.partition +
           "\", fillcolor=\"" + partition_color(n.partition) + "\"];\n";
  }
  for (const auto& e : edges) {
    out += "  \"" + e.a + "\" -- \"" + e.b + "\" [label=\"" + std::to_string(e.weight) +
           "\", penwidth=" + std::to_string(e.weight) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string export_graphml(const CategoryGraph& graph) {
  auto nodes = graph.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  auto edges = graph.edges;
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.a, a.b) < std::tie(b.a, b.b);
  });

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"partition\" for=\"node\" attr.name=\"partition\" attr.type=\"string\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      "  <graph edgedefault=\"undirected\">\n";
  for (const auto& n : nodes) {
    out += "    <node id=\"" + n.id + "\"><data key=\"partition\">" + n.partition +
           "</data></node>\n";
  }
  int edge_id = 0;
  for (const auto& e : edges) {
    out += "    <edge id=\"e" + std::to_string(edge_id++) + "\" source=\"" + e.a +
           "\" target=\"" + e.b + "\"><data key=\"weight\">" + std::to_string(e.weight) +
           "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

}  // namespace voytop
