#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "totcol/embedding.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"

namespace totcol {

// A graph together with an embedding whose underlying graph it is.
struct Instance {
  SimpleGraph graph;
  EmbeddedGraph embedding;
};

// Cm x Cn on the torus; vertex (i, j) has id i * n + j.
Instance gen_toroidal_grid(int m, int n);

// Plane triangulation on n >= 3 vertices grown by stacking a vertex into a
// random face.
Instance gen_planar_triangulation(int n, std::uint64_t seed);

// Thrown by gen_crossed when fewer than the requested pairs fit.
class CapacityError : public InputError {
 public:
  CapacityError(int requested, int achieved);
  int requested;
  int achieved;
};

// Adds `pairs` crossing vertices, each joining two chords drawn across one
// face of size >= 4 between four distinct true vertices not already
// adjacent in that way.
EmbeddedGraph gen_crossed(const EmbeddedGraph& base, int pairs, std::uint64_t seed);

// Planar graph with max degree exactly delta (>= 11) and no two triangles
// sharing an edge: hubs of degree delta whose rims carry a random matching
// of triangle edges, joined in a chain. `size` is a target vertex count; the
// result has at least delta + 1 vertices and at most size.
Instance gen_high_degree_P(int delta, int size, std::uint64_t seed);

// Planar rotation system for a planar graph; throws InputError otherwise.
EmbeddedGraph planar_embedding(const SimpleGraph& g);

bool has_adjacent_triangles(const SimpleGraph& g);

struct GenSpec {
  std::string family;  // grid | planar_triangulation | crossed_grid | wheel_sum | custom
  std::map<std::string, std::int64_t> params;
  std::uint64_t seed = 0;
};

GenSpec parse_gen_spec(const nlohmann::json& j);
nlohmann::json to_json(const GenSpec& s);

// Identical specs give identical instances. Family parameters:
//   grid: m, n; crossed_grid: m, n, pairs; planar_triangulation: n;
//   wheel_sum: delta, size. `custom` names files and cannot be generated.
Instance generate(const GenSpec& spec);

std::string sha256_hex(const std::string& bytes);

// Writes <name>.el and <name>.emb for each spec into dir and returns the
// manifest: one entry per spec with the spec, file paths and checksums.
nlohmann::json write_corpus(const std::vector<GenSpec>& specs, const std::string& dir);

}  // namespace totcol
