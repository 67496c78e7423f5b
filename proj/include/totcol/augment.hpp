#pragma once

#include <optional>
#include <string>
#include <vector>

#include "totcol/embedding.hpp"
#include "totcol/graph.hpp"

namespace totcol {

// Whether a face pair that is already adjacent in G may receive a new edge.
enum class AdjacentPairPolicy { insert, skip };

struct AugmentOptions {
  AdjacentPairPolicy adjacent_pairs = AdjacentPairPolicy::insert;
};

struct Insertion {
  int step = 0;
  std::vector<VertexId> host_face;  // boundary vertices of the split face
  VertexId a = 0;
  VertexId b = 0;
  DartId dart_a = -1;  // new dart at a
  DartId dart_b = -1;  // new dart at b
};

struct VertexClass {
  VertexId vertex = 0;
  VertexKind kind = VertexKind::true_vertex;
  std::optional<int> d1;  // degree in G; none for crossing vertices
  int d2 = 0;             // degree in G*
  bool big = false;
  bool new_incident = false;
};

// G* together with G, its faces and the vertex classification.
class AugmentedGraph {
 public:
  // Hand-encoded G*: segments without an origin are the new edges and G is
  // recovered from the origins.
  static AugmentedGraph from_gstar(EmbeddedGraph gstar);

  const EmbeddedGraph& gstar() const { return gstar_; }
  const SimpleGraph& graph() const { return g_; }
  // G-dagger before augmentation; null for hand-encoded instances.
  const EmbeddedGraph* base() const { return base_ ? &*base_ : nullptr; }

  const std::vector<Face>& faces() const { return faces_; }
  int face_of(DartId d) const { return face_of_[d]; }
  const std::vector<Insertion>& insertions() const { return insertions_; }

  // Throws PreconditionError for an unknown dart.
  bool is_new_edge(DartId d) const;
  const VertexClass& vertex_class(VertexId v) const;
  const std::vector<VertexClass>& classification() const { return classes_; }
  bool is_big(VertexId v) const { return vertex_class(v).big; }
  bool is_small(VertexId v) const { return !vertex_class(v).big; }
  int d1(VertexId v) const;  // 0 for crossing vertices
  int d2(VertexId v) const { return vertex_class(v).d2; }

  // Number of big vertex occurrences along the boundary of face i.
  int big_occurrences(int face) const;

 private:
  friend AugmentedGraph build_g_star(const EmbeddedGraph&, const SimpleGraph&, AugmentOptions);
  void finish();

  EmbeddedGraph gstar_;
  SimpleGraph g_;
  std::optional<EmbeddedGraph> base_;
  std::vector<Face> faces_;
  std::vector<int> face_of_;
  std::vector<Insertion> insertions_;
  std::vector<VertexClass> classes_;
  std::vector<int> class_index_;  // parallel to sorted vertex ids
  std::vector<VertexId> class_ids_;
};

// Inserts new edges into faces of size >= 4 between non-consecutive boundary
// occurrences of true vertices with G-degree <= 5 until no such pair is left.
// Faces are processed by smallest boundary dart, pairs by (min id, max id,
// boundary positions).
AugmentedGraph build_g_star(const EmbeddedGraph& gd, const SimpleGraph& g, AugmentOptions opts = {});

std::vector<VertexClass> classify_vertices(const AugmentedGraph& a);
bool is_new_edge(const AugmentedGraph& a, DartId d);

// Eligible boundary positions (i < j) of a face, or none.
std::optional<std::pair<int, int>> find_eligible_pair(const EmbeddedGraph& e, const SimpleGraph& g,
                                                      const Face& f, AugmentOptions opts = {});

struct AugmentCheck {
  bool faces_are_cycles = true;
  bool parallel_segments_new = true;
  bool crossings_independent = true;
  bool fixpoint = true;
  bool new_edges_low_degree = true;
  bool euler_preserved = true;
  std::vector<std::string> problems;
  bool ok() const {
    return parallel_segments_new && crossings_independent && fixpoint && new_edges_low_degree &&
           euler_preserved;
  }
};

// Post-hoc check of the G* invariants. Faces that are not cycles are
// reported but do not fail ok(): inputs need not be 2-connected.
AugmentCheck check_augmented(const AugmentedGraph& a, AugmentOptions opts = {});

}  // namespace totcol
