#ifndef VOYTOP_GRAPH_HPP
#define VOYTOP_GRAPH_HPP

#include <string>
#include <vector>

#include "voytop/mca.hpp"

namespace voytop {

struct GraphNode {
  std::string id;
  std::string partition;  // variable the node came from, or "composite"
  std::string label;
};

struct GraphEdge {
  std::string a;
  std::string b;
  long weight = 0;  // page count
};

// Undirected weighted category network; edges are pages.
struct CategoryGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

// Bipartite graph between the categories of two variables; edge (a,b)
// weight = count of pages carrying value a on var_a and b on var_b.
CategoryGraph build_category_graph(const CategoryTable& meta, const std::string& var_a,
                                   const std::string& var_b);

// Hands vs (subject, topic) composite nodes named "subject-topic".
CategoryGraph build_composite_graph(const CategoryTable& meta, const std::string& topic_var,
                                    const std::string& subject_var, const std::string& hand_var);

// Byte-deterministic DOT: nodes in sorted id order, partition tag and
// fill color as node attributes, weight as edge label and penwidth.
std::string export_dot(const CategoryGraph& graph);

std::string export_graphml(const CategoryGraph& graph);

}  // namespace voytop

#endif  // VOYTOP_GRAPH_HPP
