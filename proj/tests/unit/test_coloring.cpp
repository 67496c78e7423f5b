#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "totcol/coloring.hpp"
#include "totcol/error.hpp"
#include "totcol/gen.hpp"
#include "totcol/reducibility.hpp"

using namespace totcol;

namespace {

TotalColoring permuted(const TotalColoring& c, Rng& rng) {
  std::vector<Color> perm(c.kappa);
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = c.kappa - 1; i > 0; --i) std::swap(perm[i], perm[draw_below(rng, i + 1)]);
  TotalColoring out = c;
  for (auto& [v, col] : out.vertex_color) col = perm[col - 1];
  for (auto& [e, col] : out.edge_color) col = perm[col - 1];
  return out;
}

bool p1_ok(const SimpleGraph& g, const Edge& uv, VertexId v, int kappa) {
  VertexId u = uv.other(v);
  return g.degree(u) + g.degree(v) <= kappa && 2 * g.degree(v) <= kappa - 1;
}

std::optional<VertexId> p3_third(const SimpleGraph& g, const Edge& uv, VertexId v, int kappa) {
  VertexId u = uv.other(v);
  if (g.degree(u) + g.degree(v) != kappa + 1 || g.degree(v) > (kappa - 1) / 2) return std::nullopt;
  for (VertexId w : g.neighbors(u))
    if (w != v && g.has_edge(w, v)) return w;
  return std::nullopt;
}

}  // namespace

TEST_CASE("verify") {
  auto c3 = oracle::cycle(3);
  TotalColoring c{3, {{0, 1}, {1, 2}, {2, 3}}, {{Edge(1, 2), 1}, {Edge(0, 2), 2}, {Edge(0, 1), 3}}};
  CHECK(verify(c3, c).ok);
  CHECK(oracle::is_total_coloring(c3, c));

  auto bad = c;
  bad.edge_color[Edge(0, 1)] = 1;
  auto r = verify(c3, bad);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].find("0") != std::string::npos);

  auto partial = c;
  partial.edge_color.erase(Edge(0, 2));
  auto rp = verify(c3, partial);
  CHECK_FALSE(rp.ok);
  CHECK(rp.uncolored.size() == 1);

  SimpleGraph single;
  single.add_vertex(0);
  CHECK(verify(single, TotalColoring{1, {{0, 1}}, {}}).ok);
}

TEST_CASE("verify agrees with a pairwise scan") {
  Rng rng(5);
  int agreed = 0;
  for (int t = 0; t < 3000; ++t) {
    int n = 2 + static_cast<int>(draw_below(rng, 5));
    auto g = oracle::random_graph(rng, n, 50);
    if (g.num_vertices() + g.num_edges() > 20) continue;
    int kappa = 1 + static_cast<int>(draw_below(rng, 5));
    TotalColoring c{kappa, {}, {}};
    for (VertexId v : g.vertices()) c.vertex_color[v] = 1 + static_cast<int>(draw_below(rng, kappa));
    for (const Edge& e : g.edges()) c.edge_color[e] = 1 + static_cast<int>(draw_below(rng, kappa));
    CHECK(verify(g, c).ok == oracle::is_total_coloring(g, c));
    ++agreed;
  }
  CHECK(agreed > 2000);
}

TEST_CASE("exact values against the enumerator") {
  auto k2 = build_graph({{0, 1}});
  CHECK(oracle::chi_by_enumeration(k2) == 3);
  CHECK(oracle::chi_by_enumeration(oracle::cycle(3)) == 3);
  CHECK(oracle::chi_by_enumeration(oracle::complete(4)) == 5);
  CHECK(oracle::chi_by_enumeration(oracle::cycle(5)) == 4);

  CHECK(exact_chi_tt(k2).chi == 3);
  CHECK(exact_chi_tt(oracle::cycle(3)).chi == 3);
  CHECK(exact_chi_tt(oracle::complete(4)).chi == 5);
  CHECK(exact_chi_tt(oracle::cycle(5)).chi == 4);
}

TEST_CASE("exact_chi_tt matches the enumerator on small graphs") {
  int checked = 0;
  for (const auto& g : connected_graphs_up_to(5)) {
    if (g.num_vertices() + g.num_edges() > 12) continue;
    auto r = exact_chi_tt(g);
    CHECK(r.chi == oracle::chi_by_enumeration(g));
    CHECK(r.chi >= g.max_degree() + 1);
    CHECK(r.witness.kappa == r.chi);
    CHECK(oracle::is_total_coloring(g, r.witness));
    ++checked;
  }
  CHECK(checked > 20);
  CHECK_THROWS_AS(exact_chi_tt(oracle::complete(8), 32), PreconditionError);
}

TEST_CASE("greedy") {
  for (int n = 1; n <= 8; ++n) {
    SimpleGraph star;
    star.add_vertex(0);
    for (int i = 1; i <= n; ++i) star.add_edge(0, i);
    std::vector<TotalElement> order;
    for (const Edge& e : star.edges()) order.push_back({true, 0, e});
    for (VertexId v : star.vertices()) order.push_back({false, v, {}});
    auto c = greedy_total(star, order);
    CHECK(verify(star, c).ok);
    CHECK(c.colors_used() == (n == 1 ? 3 : n + 1));
  }
  auto empty = greedy_total(SimpleGraph{});
  CHECK(empty.vertex_color.empty());
  CHECK(empty.edge_color.empty());

  Rng rng(8);
  auto k4 = oracle::complete(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<TotalElement> order;
    for (VertexId v : k4.vertices()) order.push_back({false, v, {}});
    for (const Edge& e : k4.edges()) order.push_back({true, 0, e});
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) std::swap(order[i], order[draw_below(rng, i + 1)]);
    auto c = greedy_total(k4, order);
    CHECK(verify(k4, c).ok);
    CHECK(c.colors_used() <= 7);
  }
  for (int t = 0; t < 50; ++t) {
    auto g = oracle::random_graph(rng, 9, 40);
    auto c = greedy_total(g);
    CHECK(oracle::is_total_coloring(g, c));
    CHECK(c.colors_used() <= 2 * g.max_degree() + 1);
  }
}

TEST_CASE("extend_p1") {
  // Path u - v - w with a huge palette.
  auto path = build_graph({{0, 1}, {1, 2}});
  auto rest = delete_edge(path, Edge(0, 1));
  auto c = *exact_total_coloring(rest, 13);
  auto ext = extend_p1(path, Edge(0, 1), 0, c, 13);
  CHECK(oracle::is_total_coloring(path, ext));

  // A degree sum of kappa + 1 is refused.
  auto k4 = oracle::complete(4);
  auto k4c = *exact_total_coloring(delete_edge(k4, Edge(0, 1)), 5);
  CHECK_THROWS_WITH_AS(extend_p1(k4, Edge(0, 1), 0, k4c, 5), doctest::Contains("P1 precondition"),
                       PreconditionError);

  // Random graphs, random eligible edges, colorings shuffled by palette
  // permutation; the boundary deg(u) + deg(v) = kappa is included.
  Rng rng(17);
  int runs = 0, boundary = 0;
  for (int t = 0; t < 400; ++t) {
    auto g = oracle::random_graph(rng, 5 + static_cast<int>(draw_below(rng, 3)), 45);
    if (g.num_edges() == 0) continue;
    int kappa = g.max_degree() + 2 + static_cast<int>(draw_below(rng, 2));
    for (const Edge& e : g.edges())
      for (VertexId v : {e.u, e.v}) {
        if (!p1_ok(g, e, v, kappa)) continue;
        auto base = exact_total_coloring(delete_edge(g, e), kappa);
        REQUIRE(base);
        for (int k = 0; k < 3; ++k) {
          auto out = extend_p1(g, e, v, permuted(*base, rng), kappa);
          CHECK(oracle::is_total_coloring(g, out));
          CHECK(out.kappa == kappa);
          ++runs;
          boundary += g.degree(e.u) + g.degree(e.v) == kappa;
        }
      }
  }
  CHECK(runs > 1000);
  CHECK(boundary > 0);
}

TEST_CASE("extend_p3") {
  Rng rng(29);
  int runs = 0, cascades = 0;
  for (int t = 0; t < 3000 && runs < 600; ++t) {
    auto g = oracle::random_graph(rng, 6 + static_cast<int>(draw_below(rng, 3)), 55);
    int kappa = g.max_degree() + 2 + static_cast<int>(draw_below(rng, 2));
    for (const Edge& e : g.edges())
      for (VertexId v : {e.u, e.v}) {
        auto w = p3_third(g, e, v, kappa);
        if (!w) continue;
        auto base = exact_total_coloring(delete_edge(g, e), kappa);
        REQUIRE(base);
        for (int k = 0; k < 4; ++k) {
          auto in = permuted(*base, rng);
          TotalColoring out;
          CHECK_NOTHROW(out = extend_p3(g, e, v, *w, in, kappa));
          CHECK(oracle::is_total_coloring(g, out));
          int changed = 0;
          for (const auto& [x, col] : in.vertex_color) changed += out.vertex_color.at(x) != col;
          for (const auto& [f, col] : in.edge_color) changed += out.edge_color.at(f) != col;
          cascades += changed > 0;
          ++runs;
        }
      }
  }
  CHECK(runs >= 200);
  CHECK(cascades > 0);

  // When u and v already miss a common color only uv is touched. Vertex 0
  // sees five of the six colors, so the sixth is free unless 1 uses it.
  auto tri = build_graph({{0, 1}, {1, 2}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  // deg(0) = 5, deg(1) = 2, kappa = 6: 5 + 2 = kappa + 1.
  auto base = *exact_total_coloring(delete_edge(tri, Edge(0, 1)), 6);
  // The color missing at 0 must also be absent at 1 for the first branch.
  std::set<Color> at0{base.vertex_color.at(0)};
  for (VertexId x : {2, 3, 4, 5}) at0.insert(base.edge_color.at(Edge(0, x)));
  REQUIRE(at0.size() == 5);
  Color missing = 1;
  while (at0.count(missing)) ++missing;
  Color v1 = base.vertex_color.at(1);
  REQUIRE(v1 != missing);
  REQUIRE(base.edge_color.at(Edge(1, 2)) != missing);
  auto out = extend_p3(tri, Edge(0, 1), 1, 2, base, 6);
  CHECK(oracle::is_total_coloring(tri, out));
  CHECK(out.edge_color.at(Edge(0, 1)) == missing);
  CHECK(out.vertex_color == base.vertex_color);
  for (const auto& [f, col] : base.edge_color) CHECK(out.edge_color.at(f) == col);

  CHECK_THROWS_WITH_AS(extend_p3(tri, Edge(0, 1), 1, 2, base, 7), doctest::Contains("P3 precondition"),
                       PreconditionError);
}

TEST_CASE("solve_tcc") {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    auto g = oracle::random_tree(rng, 2 + static_cast<int>(draw_below(rng, 40)));
    auto r = solve_tcc(g);
    CHECK(oracle::is_total_coloring(g, r.coloring));
    CHECK(r.within_kappa);
    CHECK(r.colors_used <= g.max_degree() + 2);
  }

  auto k4 = solve_tcc(oracle::complete(4));
  CHECK(k4.within_kappa);
  CHECK(k4.colors_used == 5);
  CHECK(verify(oracle::complete(4), k4.coloring).ok);

  auto grid = gen_toroidal_grid(3, 3).graph;
  auto rg = solve_tcc(grid);
  CHECK(verify(grid, rg.coloring).ok);
  CHECK(rg.colors_used <= 6);

  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_graph(rng, 12, 30);
    auto r = solve_tcc(g);
    CHECK(oracle::is_total_coloring(g, r.coloring));
    CHECK(r.colors_used == r.coloring.colors_used());
    CHECK(r.kappa == g.max_degree() + 2);
  }
}

TEST_CASE("coloring text and JSON round trip") {
  auto g = gen_toroidal_grid(3, 4).graph;
  auto c = solve_tcc(g).coloring;
  std::ostringstream out;
  write_coloring(out, c);
  std::istringstream in(out.str());
  auto back = read_coloring(in);
  CHECK(back.kappa == c.kappa);
  CHECK(back.vertex_color == c.vertex_color);
  CHECK(back.edge_color == c.edge_color);

  std::istringstream js(coloring_to_json(c).dump(2));
  auto fromj = read_coloring(js);
  CHECK(fromj.vertex_color == c.vertex_color);
  CHECK(fromj.edge_color == c.edge_color);

  std::istringstream nohead("v 0 1\n");
  CHECK_THROWS_AS(read_coloring(nohead), InputError);
  std::istringstream range("kappa 2\nv 0 3\n");
  CHECK_THROWS_WITH_AS(read_coloring(range), doctest::Contains("line 2"), InputError);
  std::istringstream dup("kappa 3\ne 0 1 1\ne 1 0 2\n");
  CHECK_THROWS_AS(read_coloring(dup), InputError);
}
