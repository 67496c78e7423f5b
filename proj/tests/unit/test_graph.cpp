#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/reducibility.hpp"

using namespace totcol;

namespace {

SimpleGraph diamond() { return build_graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

std::multiset<int> degrees(const SimpleGraph& g) {
  std::multiset<int> d;
  for (VertexId v : g.vertices()) d.insert(g.degree(v));
  return d;
}

void add_pendants(SimpleGraph& g, VertexId v, int count, VertexId& next) {
  for (int i = 0; i < count; ++i) g.add_edge(v, next++);
}

}  // namespace

TEST_CASE("build_graph keeps exactly the listed edges") {
  auto k4 = oracle::complete(4);
  CHECK(k4.num_vertices() == 4);
  CHECK(k4.num_edges() == 6);
  for (VertexId v : k4.vertices()) CHECK(k4.degree(v) == 3);

  auto g = build_graph({{5, 9}}, {2});
  CHECK(g.vertices() == std::vector<VertexId>{2, 5, 9});
  CHECK(g.degree(2) == 0);
}

TEST_CASE("loops and duplicate edges are rejected by name") {
  CHECK_THROWS_WITH_AS(build_graph({{3, 3}}), doctest::Contains("loop"), InputError);
  CHECK_THROWS_WITH_AS(build_graph({{1, 2}, {2, 1}}), doctest::Contains("duplicate"), InputError);
}

TEST_CASE("delete_edge") {
  auto d = delete_edge(oracle::complete(4), Edge(2, 3));
  CHECK(degrees(d) == std::multiset<int>{2, 2, 3, 3});

  auto p = delete_edge(build_graph({{0, 1}}), Edge(0, 1));
  CHECK(p.num_vertices() == 2);
  CHECK(p.num_edges() == 0);

  auto c5 = oracle::cycle(5);
  for (const Edge& e : c5.edges()) {
    auto path = delete_edge(c5, e);
    CHECK(degrees(path) == std::multiset<int>{1, 1, 2, 2, 2});
    CHECK(is_connected(path));
  }

  CHECK_THROWS_AS(delete_edge(c5, Edge(0, 2)), PreconditionError);
}

TEST_CASE("delete then re-add restores the graph") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_graph(rng, 8, 45);
    for (const Edge& e : g.edges()) {
      auto h = delete_edge(g, e);
      h.add_edge(e.u, e.v);
      CHECK(h == g);
    }
  }
}

TEST_CASE("K4 and diamond search") {
  CHECK(find_k4s(oracle::complete(4)).size() == 1);
  CHECK(find_k4s(oracle::complete(5)).size() == 5);
  CHECK(find_k4s(oracle::cycle(6)).empty());

  auto w = find_induced_diamonds(diamond());
  REQUIRE(w.size() == 1);
  CHECK(w[0].hub == std::pair<VertexId, VertexId>{0, 1});
  CHECK(w[0].wing == std::pair<VertexId, VertexId>{2, 3});
  CHECK(find_induced_diamonds(oracle::complete(4)).empty());

  // Two triangles on a shared edge, labelled so the hub is not the first pair.
  auto two = build_graph({{4, 7}, {4, 2}, {7, 2}, {4, 9}, {7, 9}});
  auto t = find_induced_diamonds(two);
  REQUIRE(t.size() == 1);
  CHECK(t[0].hub == std::pair<VertexId, VertexId>{4, 7});
  CHECK(t[0].wing == std::pair<VertexId, VertexId>{2, 9});
}

TEST_CASE("K4 and diamond search agree with a 4-subset scan") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    int n = 4 + static_cast<int>(draw_below(rng, 7));
    auto g = oracle::random_graph(rng, n, 30 + static_cast<int>(draw_below(rng, 50)));
    auto scan = oracle::scan_quads(g);
    std::set<std::array<VertexId, 4>> k4s;
    for (const Quad& q : find_k4s(g)) CHECK(k4s.insert(q).second);
    CHECK(k4s == scan.k4);
    std::set<std::array<VertexId, 4>> ds;
    for (const auto& d : find_induced_diamonds(g))
      CHECK(ds.insert({d.hub.first, d.hub.second, d.wing.first, d.wing.second}).second);
    CHECK(ds == scan.diamonds);
  }
}

TEST_CASE("property P examples") {
  CHECK(check_property_P(oracle::complete(5)).holds);

  auto k4 = oracle::complete(4);
  VertexId next = 4;
  for (VertexId v = 0; v < 4; ++v) add_pendants(k4, v, 2, next);
  auto r = check_property_P(k4);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].condition == PropertyViolation::Condition::k4_without_low_vertex);

  auto d = diamond();
  next = 4;
  add_pendants(d, 0, 4, next);
  add_pendants(d, 1, 4, next);
  CHECK(d.degree(0) == 7);
  CHECK(d.degree(2) == 2);
  // Heavy hubs are fine while both wings stay at degree 3 or less.
  CHECK(check_property_P(d).holds);
  add_pendants(d, 2, 3, next);
  add_pendants(d, 3, 3, next);
  auto rd = check_property_P(d);
  CHECK_FALSE(rd.holds);
  REQUIRE(rd.violations.size() == 1);
  CHECK(rd.violations[0].condition == PropertyViolation::Condition::diamond_degree_caps);
}

TEST_CASE("edge_triangle_count") {
  CHECK(edge_triangle_count(diamond(), Edge(0, 1)) == 2);
  CHECK(edge_triangle_count(oracle::cycle(5), Edge(0, 1)) == 0);
  CHECK(edge_triangle_count(oracle::complete(5), Edge(1, 3)) == 3);
  CHECK_THROWS_AS(edge_triangle_count(oracle::cycle(5), Edge(0, 2)), PreconditionError);
}

// The degree caps on a diamond are a max over both hubs or both wings, so a
// single low vertex of a K4 does not carry over once an edge of that K4 is
// deleted. Every other way of breaking the property is closed.
TEST_CASE("property P under edge deletion") {
  auto only_opened_k4s = [](const SimpleGraph& g, const Edge& e) {
    for (const auto& v : check_property_P(delete_edge(g, e)).violations) {
      if (v.condition != PropertyViolation::Condition::diamond_degree_caps) return false;
      if (Edge(v.vertices[2], v.vertices[3]) != e) return false;
      if (!g.has_edge(v.vertices[0], v.vertices[1])) return false;
    }
    return true;
  };

  int checked = 0, opened = 0;
  for (const auto& g : connected_graphs_up_to(7)) {
    if (!check_property_P(g).holds) continue;
    for (const Edge& e : g.edges()) {
      CHECK(only_opened_k4s(g, e));
      if (!check_property_P(delete_edge(g, e)).holds) ++opened;
      ++checked;
    }
  }
  CHECK(checked > 1000);
  CHECK(opened > 0);

  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    auto g = oracle::random_graph(rng, 12, 35);
    if (!check_property_P(g).holds) continue;
    for (const Edge& e : g.edges()) CHECK(only_opened_k4s(g, e));
  }

  // K4 on 0..3 with degrees 4, 7, 6, 3: condition 1 holds through vertex 0,
  // but deleting 2-3 leaves hubs of degree 4 and 7 and wings of 5 and 2.
  auto g = oracle::complete(4);
  VertexId next = 4;
  add_pendants(g, 0, 1, next);
  add_pendants(g, 1, 4, next);
  add_pendants(g, 2, 3, next);
  CHECK(check_property_P(g).holds);
  auto r = check_property_P(delete_edge(g, Edge(2, 3)));
  CHECK_FALSE(r.holds);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].vertices == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("edge list text round trip and errors") {
  std::istringstream in("# K3 plus an isolated vertex\nvertices 4\n0 1\n1 2\n2 0\n");
  auto g = read_edge_list(in);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream back(out.str());
  CHECK(read_edge_list(back) == g);

  std::istringstream bad("0 1\n1 x\n");
  CHECK_THROWS_WITH_AS(read_edge_list(bad), doctest::Contains("line 2"), InputError);
  std::istringstream loop("0 1\n2 2\n");
  CHECK_THROWS_WITH_AS(read_edge_list(loop), doctest::Contains("loop"), InputError);
}
