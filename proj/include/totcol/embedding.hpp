#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "totcol/graph.hpp"

namespace totcol {

using DartId = int;

enum class Surface { plane, torus };
enum class VertexKind { true_vertex, crossing };

std::string to_string(Surface s);
Surface parse_surface(const std::string& s);

// Euler characteristic of a 2-cell embedding on the surface.
int surface_characteristic(Surface s);

// Text form of an embedding file, before validation.
struct EmbeddingSpec {
  struct Origin {
    DartId a = 0;
    DartId b = 0;
    Edge edge;
  };
  Surface surface = Surface::plane;
  std::vector<std::pair<VertexId, std::vector<DartId>>> rotation;
  std::vector<std::pair<DartId, DartId>> twins;
  std::vector<VertexId> crossings;
  std::vector<Origin> origins;
};

EmbeddingSpec read_embedding_spec(std::istream& in);
EmbeddingSpec read_embedding_file(const std::string& path);
void write_embedding_spec(std::ostream& out, const EmbeddingSpec& spec);

// The simple graph G encoded by a spec: true vertices plus origin edges.
SimpleGraph underlying_graph(const EmbeddingSpec& spec);

struct Face {
  std::vector<DartId> boundary;  // starts at the smallest dart id
  int size() const { return static_cast<int>(boundary.size()); }
};

// Rotation system over darts. Each vertex owns a counterclockwise cycle of
// darts; twin() pairs the two halves of a segment. A segment either belongs
// to an edge of the underlying graph G (origin) or, after augmentation, is a
// new edge with no origin.
//
// Face walk: the dart after d on its face is next_ccw(twin(d)).
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;
  explicit EmbeddedGraph(Surface s) : surface_(s) {}

  Surface surface() const { return surface_; }
  void set_surface(Surface s) { surface_ = s; }

  int num_darts() const { return static_cast<int>(twin_.size()); }
  int num_segments() const { return num_darts() / 2; }
  std::size_t num_vertices() const { return vertices_.size(); }

  DartId twin(DartId d) const { return twin_[d]; }
  VertexId owner(DartId d) const { return owner_[d]; }
  VertexId head(DartId d) const { return owner_[twin_[d]]; }
  DartId next_ccw(DartId d) const { return next_[d]; }
  DartId prev_ccw(DartId d) const { return prev_[d]; }
  DartId face_next(DartId d) const { return next_[twin_[d]]; }
  // Segment id: the smaller of the two dart ids.
  DartId segment(DartId d) const { return d < twin_[d] ? d : twin_[d]; }
  const std::optional<Edge>& origin(DartId d) const { return origin_[d]; }

  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
  VertexKind kind(VertexId v) const;
  bool is_crossing(VertexId v) const { return kind(v) == VertexKind::crossing; }
  std::vector<VertexId> vertices() const;
  std::vector<VertexId> true_vertices() const;
  std::vector<VertexId> crossing_vertices() const;
  // Darts at v in counterclockwise order, starting from the smallest id.
  std::vector<DartId> rotation(VertexId v) const;
  int degree(VertexId v) const;

  void add_vertex(VertexId id, VertexKind kind);
  // Inserts a segment through the corners that precede corner_a and corner_b
  // in their rotations (a corner is named by the dart leaving the vertex
  // into the face). Both corners must lie on the same face. Returns the new
  // darts (at owner(corner_a), at owner(corner_b)).
  std::pair<DartId, DartId> insert_segment(DartId corner_a, DartId corner_b,
                                           std::optional<Edge> origin);
  // Adds segments from an isolated vertex `center` to the given corners,
  // which must appear in this order along one face boundary. Returns the
  // darts created at `center`, one per corner.
  std::vector<DartId> add_star(VertexId center, const std::vector<DartId>& corners,
                               const std::vector<std::optional<Edge>>& origins);
  void set_origin(DartId d, std::optional<Edge> e);

  // Low-level constructor used by the builders; checks only that the
  // arrays describe a permutation structure.
  static EmbeddedGraph from_rotation(Surface s,
                                     const std::vector<std::pair<VertexId, std::vector<DartId>>>& rotation,
                                     const std::vector<std::pair<DartId, DartId>>& twins,
                                     const std::set<VertexId>& crossings);

  EmbeddingSpec to_spec() const;

 private:
  struct VertexRecord {
    VertexKind kind = VertexKind::true_vertex;
    DartId first = -1;
  };
  DartId new_dart_pair();
  void splice_before(DartId pos, DartId d);

  Surface surface_ = Surface::plane;
  std::vector<DartId> twin_, next_, prev_;
  std::vector<VertexId> owner_;
  std::vector<std::optional<Edge>> origin_;
  std::map<VertexId, VertexRecord> vertices_;
};

// Validates a spec against G and returns the associated graph G-dagger.
// Throws InputError for: crossing vertex of degree != 4, adjacent crossing
// vertices, an edge listed at two crossings ("edge crosses twice"), a
// non-involutive twin map, loops, and segment/edge mismatches.
EmbeddedGraph build_associated(const SimpleGraph& g, const EmbeddingSpec& spec);

// Checks every associated-graph invariant of an existing embedding against G.
void validate_associated(const SimpleGraph& g, const EmbeddedGraph& e);

// Builds an embedding from oriented face cycles (each a cyclic list of
// vertex ids, in face-walk order). Every directed segment must occur in
// exactly one face. Segments between two true vertices get origin u-v,
// segments at a crossing vertex get the edge joining the opposite
// neighbors; pairs listed in `new_edges` get no origin.
EmbeddedGraph from_face_cycles(Surface s, const std::vector<std::vector<VertexId>>& faces,
                               const std::set<VertexId>& crossings,
                               const std::set<Edge>& new_edges = {});

// G recovered from origins of the segments.
SimpleGraph underlying_graph(const EmbeddedGraph& e);

std::vector<Face> trace_faces(const EmbeddedGraph& e);
// face_of[d] = index into trace_faces(e).
std::vector<int> face_index(const EmbeddedGraph& e, const std::vector<Face>& faces);
std::vector<VertexId> face_vertices(const EmbeddedGraph& e, const Face& f);
bool face_is_cycle(const EmbeddedGraph& e, const Face& f);

int euler_characteristic(const EmbeddedGraph& e);
int euler_characteristic(const EmbeddedGraph& e, int num_faces);
// Empty when V - E + F matches the declared surface; otherwise a message.
std::optional<std::string> validate_surface(const EmbeddedGraph& e);

// Graphviz rendering with plain node/edge attributes.
void write_dot(std::ostream& out, const EmbeddedGraph& e, const std::set<DartId>& highlighted_segments = {});

}  // namespace totcol
