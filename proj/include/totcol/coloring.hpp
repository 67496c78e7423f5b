#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "totcol/graph.hpp"

namespace totcol {

using Color = int;

// Colors are 1..kappa; a missing map entry means uncolored.
struct TotalColoring {
  int kappa = 0;
  std::map<VertexId, Color> vertex_color;
  std::map<Edge, Color> edge_color;

  std::optional<Color> color_of(VertexId v) const;
  std::optional<Color> color_of(const Edge& e) const;
  int colors_used() const;  // distinct colors appearing
};

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> uncolored;
  std::vector<std::string> violations;
};

VerifyResult verify(const SimpleGraph& g, const TotalColoring& c);

// Text form: header "kappa K", then "v <vertex> <color>" and
// "e <u> <v> <color>" lines; '#' starts a comment. A document whose first
// character is '{' is read as the JSON form written by coloring_to_json.
TotalColoring read_coloring(std::istream& in);
TotalColoring read_coloring_file(const std::string& path);
void write_coloring(std::ostream& out, const TotalColoring& c);
nlohmann::json coloring_to_json(const TotalColoring& c);
TotalColoring coloring_from_json(const nlohmann::json& j);

// U(v) for edges only, and the closed version that adds the vertex color.
struct ColorUsage {
  std::set<Color> at_vertex_edges;
  std::set<Color> at_vertex_closed;
};

ColorUsage color_usage(const SimpleGraph& g, const TotalColoring& c, VertexId v);

// An element of the total graph: a vertex or an edge.
struct TotalElement {
  bool is_edge = false;
  VertexId vertex = 0;
  Edge edge;
};

struct ExactResult {
  int chi = 0;
  TotalColoring witness;
};

// Smallest kappa with a total coloring, by backtracking. Throws
// PreconditionError when |V| + |E| exceeds the budget.
ExactResult exact_chi_tt(const SimpleGraph& g, int budget = 32);
// Decides kappa-colorability exactly; no budget check.
std::optional<TotalColoring> exact_total_coloring(const SimpleGraph& g, int kappa);

// First-fit in the given element order (default: vertices, then edges).
TotalColoring greedy_total(const SimpleGraph& g, const std::vector<TotalElement>& order = {});

// Raised when an extension cannot complete. For extend_p3 the message is a
// certificate of the local configuration.
class ExtensionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extends a kappa-coloring of g - uv to g, where v is the low-degree end.
// Requires deg(u) + deg(v) <= kappa and 2 deg(v) <= kappa - 1 (degrees in g).
TotalColoring extend_p1(const SimpleGraph& g, const Edge& uv, VertexId v, const TotalColoring& c, int kappa);

// Extends across the triangle edge uv (triangle uvw) when
// deg(u) + deg(v) = kappa + 1 and deg(v) <= floor((kappa - 1) / 2).
TotalColoring extend_p3(const SimpleGraph& g, const Edge& uv, VertexId v, VertexId w, const TotalColoring& c,
                        int kappa);

struct SolveOptions {
  std::optional<int> kappa;   // default: max degree + 2
  int exact_budget = 32;      // residual components up to this many elements go to the exact solver
  std::int64_t repair_steps_per_element = 50;
  std::uint64_t seed = 1;
};

struct SolveResult {
  TotalColoring coloring;
  int kappa = 0;
  int colors_used = 0;
  bool within_kappa = false;
  int p1_reductions = 0;
  int p3_reductions = 0;
  std::vector<std::string> trace;
};

// Deletes edges removable by the P1/P3 extensions, colors what is left and
// extends back. Always returns a verifying coloring; within_kappa reports
// whether it fits in kappa colors.
SolveResult solve_tcc(const SimpleGraph& g, SolveOptions opts = {});

}  // namespace totcol
