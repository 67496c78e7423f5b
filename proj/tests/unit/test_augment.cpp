#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "totcol/augment.hpp"
#include "totcol/error.hpp"
#include "totcol/gen.hpp"

using namespace totcol;

namespace {

// Face 0 X 1 Y alternates true and crossing vertices. X carries edges 0-3
// and 1-2, Y carries 0-5 and 1-4; the outer hexagon is 0 2 3 1 5 4.
EmbeddedGraph alternating_square() {
  const VertexId X = 10, Y = 11;
  return from_face_cycles(Surface::plane,
                          {{0, X, 1, Y},
                           {0, 2, X},
                           {2, 3, X},
                           {X, 3, 1},
                           {0, Y, 4},
                           {Y, 5, 4},
                           {1, 5, Y},
                           {0, 4, 5, 1, 3, 2}},
                          {X, Y});
}

// 5-wheel around 0 with spokes 0-1 and 0-3 marked as new edges.
EmbeddedGraph wheel(bool mark_new) {
  std::vector<std::vector<VertexId>> faces;
  for (int i = 1; i <= 5; ++i) faces.push_back({0, i, i % 5 + 1});
  faces.push_back({5, 4, 3, 2, 1});
  std::set<Edge> fresh;
  if (mark_new) fresh = {Edge(0, 1), Edge(0, 3)};
  return from_face_cycles(Surface::plane, faces, {}, fresh);
}

AugmentedGraph augment(const EmbeddedGraph& e, AugmentOptions opts = {}) {
  return build_g_star(e, underlying_graph(e), opts);
}

std::vector<EmbeddedGraph> corpus() {
  std::vector<EmbeddedGraph> out;
  for (int s = 0; s < 8; ++s) {
    out.push_back(gen_crossed(gen_toroidal_grid(3 + s % 3, 4 + s % 2).embedding, 1 + s % 3, s));
    out.push_back(gen_planar_triangulation(12 + s, s).embedding);
    out.push_back(gen_crossed(gen_toroidal_grid(6, 6).embedding, 2 * s, s));
  }
  out.push_back(gen_toroidal_grid(5, 6).embedding);
  out.push_back(alternating_square());
  out.push_back(from_face_cycles(Surface::plane, {{0, 1, 2, 3, 4, 5}, {5, 4, 3, 2, 1, 0}}, {}));
  return out;
}

}  // namespace

TEST_CASE("a triangulated drawing gains no new edges") {
  auto e = gen_planar_triangulation(9, 4).embedding;
  auto a = augment(e);
  CHECK(a.insertions().empty());
  CHECK(a.gstar().num_darts() == e.num_darts());
}

TEST_CASE("plane C6 is chorded until every face is a triangle") {
  auto e = from_face_cycles(Surface::plane, {{0, 1, 2, 3, 4, 5}, {5, 4, 3, 2, 1, 0}}, {});
  auto a = augment(e);
  for (const auto& f : a.faces()) CHECK(f.size() == 3);
  CHECK(a.faces().size() == 8);
  CHECK(a.insertions().size() == 6);
  for (const auto& ins : a.insertions()) {
    CHECK(ins.host_face.size() >= 4);
    CHECK(a.is_new_edge(ins.dart_a));
    CHECK(a.is_new_edge(ins.dart_b));
  }
  CHECK(a.graph() == oracle::cycle(6));
}

TEST_CASE("an alternating 4-face gets its one forced new edge") {
  auto a = augment(alternating_square());
  int through = 0;
  for (const auto& ins : a.insertions()) {
    std::set<VertexId> host(ins.host_face.begin(), ins.host_face.end());
    if (host == std::set<VertexId>{0, 1, 10, 11}) {
      ++through;
      CHECK(Edge(ins.a, ins.b) == Edge(0, 1));
    }
  }
  CHECK(through == 1);
  for (VertexId x : {10, 11}) {
    auto rot = a.gstar().rotation(x);
    for (DartId d : rot) CHECK(a.faces()[a.face_of(d)].size() == 3);
  }
}

TEST_CASE("vertex classification") {
  auto fresh = AugmentedGraph::from_gstar(wheel(true));
  CHECK(fresh.d1(0) == 3);
  CHECK(fresh.d2(0) == 5);
  CHECK(fresh.is_big(0));
  CHECK(fresh.vertex_class(0).new_incident);

  auto plain = AugmentedGraph::from_gstar(wheel(false));
  CHECK(plain.d1(0) == 5);
  CHECK(plain.d2(0) == 5);
  CHECK(plain.is_small(0));

  auto sq = augment(alternating_square());
  CHECK(sq.vertex_class(10).kind == VertexKind::crossing);
  CHECK(sq.d2(10) == 4);
  CHECK(sq.is_small(10));
  CHECK_FALSE(sq.vertex_class(10).d1);

  for (const auto& e : corpus()) {
    auto a = augment(e);
    for (const auto& c : classify_vertices(a)) {
      if (c.kind == VertexKind::crossing) {
        CHECK_FALSE(c.big);
        CHECK(c.d2 == 4);
      } else {
        CHECK(c.d1 == a.graph().degree(c.vertex));
        CHECK(c.d2 == a.gstar().degree(c.vertex));
        CHECK(c.big == ((*c.d1 == 3 && c.d2 == 5) || c.d2 >= 6));
      }
    }
  }
}

TEST_CASE("is_new_edge") {
  auto e = alternating_square();
  auto a = augment(e);
  for (DartId d = 0; d < e.num_darts(); ++d) CHECK_FALSE(a.is_new_edge(d));
  for (const auto& ins : a.insertions()) {
    CHECK(is_new_edge(a, ins.dart_a));
    CHECK(is_new_edge(a, ins.dart_b));
  }
  CHECK_THROWS_AS(a.is_new_edge(a.gstar().num_darts()), PreconditionError);
  CHECK_THROWS_AS(a.is_new_edge(-1), PreconditionError);

  // Parallel segments can only be new edges.
  for (const auto& g : corpus()) {
    auto aug = augment(g);
    std::map<Edge, std::vector<DartId>> between;
    const auto& gs = aug.gstar();
    for (DartId d = 0; d < gs.num_darts(); ++d)
      if (d < gs.twin(d)) between[Edge(gs.owner(d), gs.head(d))].push_back(d);
    for (const auto& [pair, ds] : between)
      if (ds.size() > 1)
        for (DartId d : ds) CHECK(aug.is_new_edge(d));
  }
}

TEST_CASE("fixpoint and G* invariants over a corpus") {
  for (auto policy : {AdjacentPairPolicy::insert, AdjacentPairPolicy::skip}) {
    AugmentOptions opts{policy};
    for (const auto& e : corpus()) {
      auto a = augment(e, opts);
      auto check = check_augmented(a, opts);
      CHECK(check.ok());
      for (const auto& f : a.faces())
        if (f.size() >= 4) CHECK_FALSE(find_eligible_pair(a.gstar(), a.graph(), f, opts));
      CHECK(euler_characteristic(a.gstar()) == euler_characteristic(e));
      CHECK(underlying_graph(a.gstar()) == a.graph());
      for (const auto& ins : a.insertions()) {
        CHECK(a.graph().degree(ins.a) <= 5);
        CHECK(a.graph().degree(ins.b) <= 5);
        if (policy == AdjacentPairPolicy::skip) CHECK_FALSE(a.graph().has_edge(ins.a, ins.b));
      }
    }
  }
}

TEST_CASE("augmentation is deterministic") {
  auto e = gen_crossed(gen_toroidal_grid(5, 5).embedding, 3, 9);
  auto a = augment(e), b = augment(e);
  REQUIRE(a.insertions().size() == b.insertions().size());
  for (std::size_t i = 0; i < a.insertions().size(); ++i) {
    CHECK(a.insertions()[i].a == b.insertions()[i].a);
    CHECK(a.insertions()[i].b == b.insertions()[i].b);
    CHECK(a.insertions()[i].host_face == b.insertions()[i].host_face);
  }
}
