#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace totcol {

using VertexId = int;

// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool has(VertexId x) const { return x == u || x == v; }
  VertexId other(VertexId x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);
std::string to_string(const Edge& e);

// Undirected simple graph over opaque integer vertex ids.
//
// Invariants: no loops, no parallel edges, adjacency symmetric. Vertices are
// kept in id order and neighbor sets are sorted, so every traversal below is
// deterministic.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  // Throws InputError naming the pair on a loop or a repeated edge.
  static SimpleGraph from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                const std::vector<VertexId>& isolated = {});

  void add_vertex(VertexId v);
  // Throws InputError on loops and duplicates.
  void add_edge(VertexId a, VertexId b);
  // Throws PreconditionError if the edge is absent.
  void remove_edge(const Edge& e);

  bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
  bool has_edge(VertexId a, VertexId b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  int degree(VertexId v) const;
  const std::set<VertexId>& neighbors(VertexId v) const;
  int max_degree() const;
  int min_degree() const;

  std::vector<VertexId> vertices() const;
  // Edges in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.adj_ == b.adj_; }

 private:
  std::map<VertexId, std::set<VertexId>> adj_;
  std::size_t num_edges_ = 0;
};

// Functional wrappers matching the module contract.
SimpleGraph build_graph(const std::vector<std::pair<VertexId, VertexId>>& edges,
                        const std::vector<VertexId>& isolated = {});
SimpleGraph delete_edge(const SimpleGraph& g, const Edge& e);

// Number of common neighbors of the endpoints, i.e. triangles through e.
int edge_triangle_count(const SimpleGraph& g, const Edge& e);

using Quad = std::array<VertexId, 4>;

// All vertex quadruples that are pairwise adjacent, each sorted ascending.
std::vector<Quad> find_k4s(const SimpleGraph& g);

// Induced K4 minus an edge. hub = endpoints of the shared edge (degree 3
// inside the diamond), wing = the nonadjacent pair.
struct DiamondWitness {
  std::pair<VertexId, VertexId> hub;
  std::pair<VertexId, VertexId> wing;

  friend auto operator<=>(const DiamondWitness&, const DiamondWitness&) = default;
};

std::vector<DiamondWitness> find_induced_diamonds(const SimpleGraph& g);

struct PropertyViolation {
  enum class Condition { k4_without_low_vertex, diamond_degree_caps };
  Condition condition;
  std::vector<VertexId> vertices;  // the failing K4, or w1 w3 w2 w4
  std::string describe() const;
};

struct PropertyReport {
  bool holds = true;
  std::vector<PropertyViolation> violations;
};

// Every K4 has a vertex of degree <= 4 and every induced diamond has
// max(deg w1, deg w3) <= 5 or max(deg w2, deg w4) <= 3. Degrees are taken
// in the whole graph.
PropertyReport check_property_P(const SimpleGraph& g);

// Edge-list text: "u v" per line, '#' comments, optional "vertices N" header
// declaring ids 0..N-1.
SimpleGraph read_edge_list(std::istream& in);
SimpleGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const SimpleGraph& g);

}  // namespace totcol
