#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>

#include "voytop/errors.hpp"
#include "voytop/graph.hpp"

using namespace voytop;

namespace {

CategoryTable small_meta() {
  CategoryTable t;
  t.variables = {"hand", "subject", "topic"};
  auto add = [&](const std::string& page, const std::string& hand, const std::string& subject,
                 const std::string& topic) {
    t.row_ids.push_back(page);
    t.values.push_back({hand, subject, topic});
  };
  add("f1r", "1", "botanical", "0");
  add("f1v", "1", "botanical", "0");
  add("f2r", "1", "botanical", "1");
  add("f67r", "4", "astrological", "2");
  add("f75r", "2", "balneological", "2");
  return t;
}

long weight_between(const CategoryGraph& g, const std::string& a, const std::string& b) {
  for (const auto& e : g.edges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.weight;
  return 0;
}

}  // namespace

TEST_CASE("build_category_graph counts pages per category pair") {
  auto g = build_category_graph(small_meta(), "hand", "topic");
  CHECK(weight_between(g, "hand:1", "topic:0") == 2);
  CHECK(weight_between(g, "hand:1", "topic:1") == 1);
  CHECK(weight_between(g, "hand:4", "topic:2") == 1);
  CHECK(weight_between(g, "hand:2", "topic:2") == 1);
  CHECK(weight_between(g, "hand:4", "topic:0") == 0);

  // bipartite: every edge joins the two partitions
  std::map<std::string, std::string> part;
  for (const auto& n : g.nodes) part[n.id] = n.partition;
  for (const auto& e : g.edges) CHECK(part.at(e.a) != part.at(e.b));
}

TEST_CASE("edge weights sum to the page count") {
  auto meta = small_meta();
  auto g = build_category_graph(meta, "subject", "topic");
  long total = 0;
  for (const auto& e : g.edges) total += e.weight;
  CHECK(total == static_cast<long>(meta.row_ids.size()));
}

TEST_CASE("single page gives a single weight-1 edge") {
  CategoryTable t;
  t.variables = {"hand", "topic"};
  t.row_ids = {"f1r", "f1v", "f2r"};
  t.values = {{"1", "0"}, {"1", "0"}, {"1", "0"}};
  auto g = build_category_graph(t, "hand", "topic");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].weight == 3);
  CHECK(g.nodes.size() == 2);
}

TEST_CASE("composite graph joins hands to subject-topic nodes") {
  auto g = build_composite_graph(small_meta(), "topic", "subject", "hand");
  CHECK(weight_between(g, "hand:1", "botanical-0") == 2);
  CHECK(weight_between(g, "hand:1", "botanical-1") == 1);
  CHECK(weight_between(g, "hand:4", "astrological-2") == 1);
  bool found_composite = false;
  for (const auto& n : g.nodes)
    if (n.id == "astrological-2") {
      found_composite = true;
      CHECK(n.partition == "composite");
    }
  CHECK(found_composite);
}

TEST_CASE("export_dot shape, labels, byte determinism") {
  auto g = build_category_graph(small_meta(), "hand", "topic");
  auto dot = export_dot(g);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("label=\"2\"") != std::string::npos);
  CHECK(dot.find("hand:1") != std::string::npos);
  CHECK(export_dot(g) == dot);

  // nodes appear in sorted id order
  const auto p1 = dot.find("\"hand:1\"");
  const auto p4 = dot.find("\"hand:4\"");
  const auto pt = dot.find("\"topic:0\"");
  REQUIRE(p1 != std::string::npos);
  CHECK(p1 < p4);
  CHECK(p4 < pt);
}

TEST_CASE("export_dot of the empty graph") {
  CategoryGraph g;
  auto dot = export_dot(g);
  CHECK(dot.find("{") != std::string::npos);
  CHECK(dot.find("}") != std::string::npos);
  CHECK(dot.find("--") == std::string::npos);
}

TEST_CASE("export_graphml is well formed and stable") {
  auto g = build_category_graph(small_meta(), "subject", "topic");
  auto xml = export_graphml(g);
  CHECK(xml.rfind("<?xml", 0) == 0);
  CHECK(xml.find("<graphml") != std::string::npos);
  CHECK(xml.find("</graphml>") != std::string::npos);
  const auto count_tag = [&](const std::string& tag) {
    std::size_t n = 0, at = 0;
    while ((at = xml.find(tag, at)) != std::string::npos) {
      ++n;
      at += tag.size();
    }
    return n;
  };
  CHECK(count_tag("<node ") == g.nodes.size());
  CHECK(count_tag("<edge ") == g.edges.size());
  CHECK(export_graphml(g) == xml);
}

TEST_CASE("graph construction is invariant to page order") {
  auto meta = small_meta();
  auto g1 = build_category_graph(meta, "hand", "topic");

  CategoryTable rev = meta;
  std::reverse(rev.row_ids.begin(), rev.row_ids.end());
  std::reverse(rev.values.begin(), rev.values.end());
  auto g2 = build_category_graph(rev, "hand", "topic");
  CHECK(export_dot(g1) == export_dot(g2));
}

TEST_CASE("build_category_graph rejects unknown variables") {
  CHECK_THROWS_AS(build_category_graph(small_meta(), "hand", "nope"), ArgumentError);
}
