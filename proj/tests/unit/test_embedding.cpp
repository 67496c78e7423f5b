#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "totcol/embedding.hpp"
#include "totcol/error.hpp"
#include "totcol/gen.hpp"

using namespace totcol;

namespace {

// Tetrahedron: outer face 0 1 2 seen from outside, vertex 3 in the middle.
EmbeddedGraph planar_k4(Surface s = Surface::plane) {
  return from_face_cycles(s, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}}, {});
}

// Square 0 1 2 3 with both diagonals crossing at 5 and vertex 4 outside
// joined to every corner.
EmbeddedGraph k5_one_crossing() {
  return from_face_cycles(Surface::plane,
                          {{0, 1, 5}, {1, 2, 5}, {2, 3, 5}, {3, 0, 5}, {1, 0, 4}, {2, 1, 4}, {3, 2, 4}, {0, 3, 4}},
                          {5});
}

std::vector<int> sizes_of(const std::vector<Face>& faces) {
  std::vector<int> s;
  for (const auto& f : faces) s.push_back(f.size());
  std::sort(s.begin(), s.end());
  return s;
}

int charge_sum(const EmbeddedGraph& e) {
  int total = 0;
  for (VertexId v : e.vertices()) total += e.degree(v) - 6;
  for (const auto& f : trace_faces(e)) total += 2 * f.size() - 6;
  return total;
}

EmbeddingSpec round_trip(const EmbeddingSpec& spec) {
  std::ostringstream out;
  write_embedding_spec(out, spec);
  std::istringstream in(out.str());
  return read_embedding_spec(in);
}

}  // namespace

TEST_CASE("planar K4") {
  auto e = planar_k4();
  auto g = oracle::complete(4);
  auto gd = build_associated(g, e.to_spec());
  CHECK(gd.crossing_vertices().empty());
  CHECK(underlying_graph(gd) == g);
  auto faces = trace_faces(gd);
  CHECK(sizes_of(faces) == std::vector<int>{3, 3, 3, 3});
  CHECK(sizes_of(faces) == oracle::face_sizes(gd));
  CHECK(euler_characteristic(gd) == 2);
  CHECK_FALSE(validate_surface(gd));
  for (const auto& f : faces) CHECK(face_is_cycle(gd, f));
}

TEST_CASE("toroidal grid C3 x C3") {
  auto inst = gen_toroidal_grid(3, 3);
  auto faces = trace_faces(inst.embedding);
  CHECK(faces.size() == 9);
  CHECK(sizes_of(faces) == std::vector<int>(9, 4));
  CHECK(oracle::face_sizes(inst.embedding) == std::vector<int>(9, 4));
  CHECK(euler_characteristic(inst.embedding) == 0);
  CHECK_FALSE(validate_surface(inst.embedding));
}

TEST_CASE("plane C5") {
  auto e = from_face_cycles(Surface::plane, {{0, 1, 2, 3, 4}, {4, 3, 2, 1, 0}}, {});
  CHECK(sizes_of(trace_faces(e)) == std::vector<int>{5, 5});
  CHECK(euler_characteristic(e) == 2);
}

TEST_CASE("K5 with one crossing pair") {
  auto spec = k5_one_crossing().to_spec();
  auto gd = build_associated(oracle::complete(5), spec);
  CHECK(gd.num_vertices() == 6);
  REQUIRE(gd.crossing_vertices() == std::vector<VertexId>{5});
  CHECK(gd.degree(5) == 4);
  CHECK(underlying_graph(gd) == oracle::complete(5));
  CHECK(sizes_of(trace_faces(gd)) == oracle::face_sizes(gd));
  CHECK(trace_faces(gd).size() == 8);
  CHECK(euler_characteristic(gd) == 2);
}

TEST_CASE("an edge at two crossings is rejected") {
  // Two crossings in different faces of a grid, then relabel the second so
  // it claims an edge already crossed at the first.
  auto base = gen_toroidal_grid(4, 4);
  auto e = gen_crossed(base.embedding, 2, 5);
  auto g = underlying_graph(e);
  auto xs = e.crossing_vertices();
  REQUIRE(xs.size() == 2);
  Edge first = *e.origin(e.rotation(xs[0])[0]);
  auto rot = e.rotation(xs[1]);
  auto spec = e.to_spec();
  for (auto& o : spec.origins)
    for (DartId d : {rot[0], rot[2]})
      if (o.a == d || o.b == d) o.edge = first;
  CHECK_THROWS_WITH_AS(build_associated(g, spec), doctest::Contains("edge crosses twice"), InputError);
}

TEST_CASE("structural errors in a spec") {
  auto spec = k5_one_crossing().to_spec();

  auto broken = spec;
  broken.twins[0].second = broken.twins[1].first;
  CHECK_THROWS_WITH_AS(build_associated(oracle::complete(5), broken), doctest::Contains("twin"), InputError);

  // Vertex 4 has four segments, but they belong to four different edges.
  auto wrong = spec;
  wrong.crossings.push_back(4);
  auto square = build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
  CHECK_THROWS_WITH_AS(build_associated(square, wrong), doctest::Contains("opposite segments"), InputError);

  std::istringstream no_surface("rotation:\n0: 0\n");
  CHECK_THROWS_WITH_AS(read_embedding_spec(no_surface), doctest::Contains("surface"), InputError);
  std::istringstream bad_line("surface: torus\nrotation:\n0 1 2\n");
  CHECK_THROWS_WITH_AS(read_embedding_spec(bad_line), doctest::Contains("line 3"), InputError);
}

TEST_CASE("adjacent crossing vertices are rejected") {
  // Corner 0 of the crossed square also has degree 4 and touches crossing 5.
  auto spec = k5_one_crossing().to_spec();
  spec.crossings.push_back(0);
  auto rest = build_graph({{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
  CHECK_THROWS_WITH_AS(build_associated(rest, spec), doctest::Contains("adjacent crossing vertices"), InputError);
}

TEST_CASE("a plane drawing declared on the torus fails the surface check") {
  auto e = planar_k4(Surface::torus);
  auto msg = validate_surface(e);
  REQUIRE(msg);
  CHECK(msg->find("not 2-cell for declared surface") != std::string::npos);
}

TEST_CASE("spec text round trip") {
  for (const auto& e : {planar_k4(), k5_one_crossing(), gen_toroidal_grid(3, 4).embedding}) {
    auto spec = e.to_spec();
    auto back = round_trip(spec);
    auto g = underlying_graph(back);
    auto rebuilt = build_associated(g, back);
    std::ostringstream a, b;
    write_embedding_spec(a, spec);
    write_embedding_spec(b, rebuilt.to_spec());
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("dart conservation, charge identity and crossing independence") {
  std::vector<EmbeddedGraph> cases;
  for (int s = 0; s < 6; ++s) {
    cases.push_back(gen_planar_triangulation(8 + 5 * s, s).embedding);
    cases.push_back(gen_crossed(gen_toroidal_grid(3 + s, 4).embedding, 2 + s, s));
    cases.push_back(gen_crossed(gen_planar_triangulation(10 + s, s).embedding, 0, s));
  }
  for (const auto& e : cases) {
    auto faces = trace_faces(e);
    int walked = 0;
    for (const auto& f : faces) walked += f.size();
    int rotated = 0;
    for (VertexId v : e.vertices()) rotated += static_cast<int>(e.rotation(v).size());
    CHECK(walked == 2 * e.num_segments());
    CHECK(rotated == 2 * e.num_segments());
    CHECK(sizes_of(faces) == oracle::face_sizes(e));
    CHECK(charge_sum(e) == -6 * euler_characteristic(e));
    CHECK(charge_sum(e) == (e.surface() == Surface::plane ? -12 : 0));
    for (DartId d = 0; d < e.num_darts(); ++d)
      CHECK_FALSE((e.is_crossing(e.owner(d)) && e.is_crossing(e.head(d))));
    validate_associated(underlying_graph(e), e);
  }
}
