#include "totcol/embedding.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "totcol/error.hpp"

namespace totcol {

std::string to_string(Surface s) { return s == Surface::plane ? "plane" : "torus"; }

Surface parse_surface(const std::string& s) {
  if (s == "plane") return Surface::plane;
  if (s == "torus") return Surface::torus;
  throw InputError("unknown surface '" + s + "' (expected plane or torus)");
}

int surface_characteristic(Surface s) { return s == Surface::plane ? 2 : 0; }

// ---------------------------------------------------------------------------
// EmbeddedGraph

VertexKind EmbeddedGraph::kind(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw PreconditionError("unknown vertex " + std::to_string(v));
  return it->second.kind;
}

std::vector<VertexId> EmbeddedGraph::vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, r] : vertices_) out.push_back(v);
  return out;
}

std::vector<VertexId> EmbeddedGraph::true_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, r] : vertices_)
    if (r.kind == VertexKind::true_vertex) out.push_back(v);
  return out;
}

std::vector<VertexId> EmbeddedGraph::crossing_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, r] : vertices_)
    if (r.kind == VertexKind::crossing) out.push_back(v);
  return out;
}

std::vector<DartId> EmbeddedGraph::rotation(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw PreconditionError("unknown vertex " + std::to_string(v));
  std::vector<DartId> out;
  DartId start = it->second.first;
  if (start < 0) return out;
  DartId d = start;
  do {
    out.push_back(d);
    d = next_[d];
  } while (d != start);
  std::rotate(out.begin(), std::min_element(out.begin(), out.end()), out.end());
  return out;
}

int EmbeddedGraph::degree(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw PreconditionError("unknown vertex " + std::to_string(v));
  DartId start = it->second.first;
  if (start < 0) return 0;
  int n = 0;
  DartId d = start;
  do {
    ++n;
    d = next_[d];
  } while (d != start);
  return n;
}

void EmbeddedGraph::add_vertex(VertexId id, VertexKind kind) {
  if (vertices_.count(id)) throw PreconditionError("vertex " + std::to_string(id) + " exists");
  vertices_[id] = VertexRecord{kind, -1};
}

DartId EmbeddedGraph::new_dart_pair() {
  DartId a = num_darts();
  twin_.push_back(a + 1);
  twin_.push_back(a);
  for (int i = 0; i < 2; ++i) {
    next_.push_back(-1);
    prev_.push_back(-1);
    owner_.push_back(-1);
    origin_.emplace_back();
  }
  return a;
}

void EmbeddedGraph::splice_before(DartId pos, DartId d) {
  DartId p = prev_[pos];
  next_[p] = d;
  prev_[d] = p;
  next_[d] = pos;
  prev_[pos] = d;
  owner_[d] = owner_[pos];
}

namespace {

// Position of each dart of the face through `start`, in walk order.
std::vector<DartId> walk_face(const EmbeddedGraph& e, DartId start) {
  std::vector<DartId> out;
  DartId d = start;
  do {
    out.push_back(d);
    d = e.face_next(d);
  } while (d != start);
  return out;
}

}  // namespace

std::pair<DartId, DartId> EmbeddedGraph::insert_segment(DartId corner_a, DartId corner_b,
                                                        std::optional<Edge> origin) {
  if (owner_[corner_a] == owner_[corner_b])
    throw PreconditionError("segment would be a loop at " + std::to_string(owner_[corner_a]));
  auto walk = walk_face(*this, corner_a);
  if (std::find(walk.begin(), walk.end(), corner_b) == walk.end())
    throw PreconditionError("corners are not on a common face");
  DartId x = new_dart_pair();
  DartId y = x + 1;
  splice_before(corner_a, x);
  splice_before(corner_b, y);
  origin_[x] = origin_[y] = origin;
  return {x, y};
}

std::vector<DartId> EmbeddedGraph::add_star(VertexId center, const std::vector<DartId>& corners,
                                            const std::vector<std::optional<Edge>>& origins) {
  auto it = vertices_.find(center);
  if (it == vertices_.end() || it->second.first >= 0)
    throw PreconditionError("star center must be an existing isolated vertex");
  if (corners.empty()) throw PreconditionError("star needs at least one corner");
  if (origins.size() != corners.size()) throw PreconditionError("one origin per corner required");
  auto walk = walk_face(*this, corners.front());
  std::size_t pos = 0;
  for (DartId c : corners) {
    auto f = std::find(walk.begin() + static_cast<std::ptrdiff_t>(pos), walk.end(), c);
    if (f == walk.end()) throw PreconditionError("star corners must follow one face in order");
    pos = static_cast<std::size_t>(f - walk.begin()) + 1;
  }
  const std::size_t r = corners.size();
  std::vector<DartId> at_center(r);
  for (std::size_t j = 0; j < r; ++j) {
    DartId x = new_dart_pair();
    DartId y = x + 1;
    at_center[j] = x;
    owner_[x] = center;
    splice_before(corners[j], y);
    origin_[x] = origin_[y] = origins[j];
  }
  // The face through corner j-1 .. corner j closes via x_j then x_{j-1}, so
  // the rotation at the center runs through the star darts backwards.
  for (std::size_t j = 0; j < r; ++j) {
    next_[at_center[j]] = at_center[(j + r - 1) % r];
    prev_[at_center[j]] = at_center[(j + 1) % r];
  }
  it->second.first = at_center.front();
  return at_center;
}

void EmbeddedGraph::set_origin(DartId d, std::optional<Edge> e) {
  origin_[d] = e;
  origin_[twin_[d]] = e;
}

EmbeddedGraph EmbeddedGraph::from_rotation(
    Surface s, const std::vector<std::pair<VertexId, std::vector<DartId>>>& rotation,
    const std::vector<std::pair<DartId, DartId>>& twins, const std::set<VertexId>& crossings) {
  EmbeddedGraph e(s);
  int num_darts = 0;
  for (const auto& [v, ds] : rotation) num_darts += static_cast<int>(ds.size());
  e.twin_.assign(num_darts, -1);
  e.next_.assign(num_darts, -1);
  e.prev_.assign(num_darts, -1);
  e.owner_.assign(num_darts, -1);
  e.origin_.assign(num_darts, std::nullopt);

  for (const auto& [v, ds] : rotation) {
    if (e.vertices_.count(v)) throw InputError("vertex " + std::to_string(v) + " listed twice in rotation");
    VertexRecord rec{crossings.count(v) ? VertexKind::crossing : VertexKind::true_vertex,
                     ds.empty() ? -1 : ds.front()};
    e.vertices_[v] = rec;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      DartId d = ds[i];
      if (d < 0 || d >= num_darts)
        throw InputError("dart " + std::to_string(d) + " out of range 0.." + std::to_string(num_darts - 1));
      if (e.owner_[d] != -1) throw InputError("dart " + std::to_string(d) + " appears twice in rotation");
      e.owner_[d] = v;
      e.next_[d] = ds[(i + 1) % ds.size()];
      e.prev_[d] = ds[(i + ds.size() - 1) % ds.size()];
    }
  }
  for (VertexId x : crossings)
    if (!e.vertices_.count(x)) throw InputError("crossing vertex " + std::to_string(x) + " has no rotation");
  for (auto [a, b] : twins) {
    for (DartId d : {a, b})
      if (d < 0 || d >= num_darts) throw InputError("twin dart " + std::to_string(d) + " out of range");
    if (a == b) throw InputError("non-involutive twin: dart " + std::to_string(a) + " paired with itself");
    if (e.twin_[a] != -1 || e.twin_[b] != -1)
      throw InputError("non-involutive twin: pair " + std::to_string(a) + " " + std::to_string(b) +
                       " reuses a dart");
    e.twin_[a] = b;
    e.twin_[b] = a;
  }
  for (DartId d = 0; d < num_darts; ++d) {
    if (e.twin_[d] == -1) throw InputError("dart " + std::to_string(d) + " has no twin");
    if (e.owner_[d] == e.owner_[e.twin_[d]])
      throw InputError("loop at vertex " + std::to_string(e.owner_[d]) + " (darts " + std::to_string(d) +
                       " " + std::to_string(e.twin_[d]) + ")");
  }
  return e;
}

EmbeddingSpec EmbeddedGraph::to_spec() const {
  EmbeddingSpec spec;
  spec.surface = surface_;
  for (const auto& [v, r] : vertices_) {
    spec.rotation.emplace_back(v, rotation(v));
    if (r.kind == VertexKind::crossing) spec.crossings.push_back(v);
  }
  for (DartId d = 0; d < num_darts(); ++d) {
    if (d > twin_[d]) continue;
    spec.twins.emplace_back(d, twin_[d]);
    if (origin_[d]) spec.origins.push_back({d, twin_[d], *origin_[d]});
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Validation

void validate_associated(const SimpleGraph& g, const EmbeddedGraph& e) {
  auto fail = [](const std::string& m) { throw InputError(m); };

  std::set<VertexId> gv;
  for (VertexId v : g.vertices()) gv.insert(v);
  for (VertexId v : e.true_vertices())
    if (!gv.count(v)) fail("true vertex " + std::to_string(v) + " is not a vertex of G");
  for (VertexId v : gv)
    if (!e.has_vertex(v) || e.is_crossing(v)) fail("vertex " + std::to_string(v) + " of G missing from embedding");

  // An edge may appear at one crossing only.
  std::map<Edge, VertexId> crossed_at;
  for (VertexId x : e.crossing_vertices()) {
    auto rot = e.rotation(x);
    if (rot.size() != 4)
      fail("crossing vertex " + std::to_string(x) + " has degree " + std::to_string(rot.size()) + " (expected 4)");
    for (DartId d : rot)
      if (e.is_crossing(e.head(d)))
        fail("adjacent crossing vertices " + std::to_string(x) + " and " + std::to_string(e.head(d)));
    for (int i = 0; i < 2; ++i) {
      const auto& oa = e.origin(rot[i]);
      const auto& ob = e.origin(rot[i + 2]);
      if (!oa || !ob || *oa != *ob)
        fail("crossing vertex " + std::to_string(x) + ": opposite segments belong to different edges");
    }
    if (*e.origin(rot[0]) == *e.origin(rot[1]))
      fail("crossing vertex " + std::to_string(x) + " crosses an edge with itself");
    for (int i = 0; i < 2; ++i) {
      Edge ge = *e.origin(rot[i]);
      auto [it, fresh] = crossed_at.emplace(ge, x);
      if (!fresh)
        fail("edge crosses twice: " + to_string(ge) + " at crossing vertices " + std::to_string(it->second) +
             " and " + std::to_string(x));
    }
  }

  std::map<Edge, int> segments_of;
  for (DartId d = 0; d < e.num_darts(); ++d) {
    if (d > e.twin(d)) continue;
    const auto& o = e.origin(d);
    VertexId a = e.owner(d), b = e.head(d);
    if (!o) fail("segment " + std::to_string(d) + " " + std::to_string(e.twin(d)) + " has no origin edge");
    if (!g.has_edge(*o)) fail("origin " + to_string(*o) + " of segment " + std::to_string(d) + " is not an edge of G");
    bool ca = e.is_crossing(a), cb = e.is_crossing(b);
    if (!ca && !cb && *o != Edge(a, b))
      fail("segment " + std::to_string(a) + "-" + std::to_string(b) + " labelled with edge " + to_string(*o));
    if (ca != cb && !o->has(ca ? b : a))
      fail("segment at crossing vertex does not end at an endpoint of " + to_string(*o));
    ++segments_of[*o];
  }
  for (const Edge& ge : g.edges()) {
    int want = crossed_at.count(ge) ? 2 : 1;
    int have = segments_of.count(ge) ? segments_of[ge] : 0;
    if (have != want)
      fail("edge " + to_string(ge) + " is drawn with " + std::to_string(have) + " segment(s), expected " +
           std::to_string(want));
  }
  for (VertexId v : gv)
    if (e.degree(v) != g.degree(v))
      fail("vertex " + std::to_string(v) + " has " + std::to_string(e.degree(v)) + " darts but degree " +
           std::to_string(g.degree(v)) + " in G");
}

EmbeddedGraph build_associated(const SimpleGraph& g, const EmbeddingSpec& spec) {
  std::set<VertexId> crossings(spec.crossings.begin(), spec.crossings.end());
  EmbeddedGraph e = EmbeddedGraph::from_rotation(spec.surface, spec.rotation, spec.twins, crossings);
  std::set<DartId> labelled;
  for (const auto& o : spec.origins) {
    if (o.a < 0 || o.a >= e.num_darts() || e.twin(o.a) != o.b)
      throw InputError("origin pair " + std::to_string(o.a) + " " + std::to_string(o.b) + " is not a segment");
    if (!labelled.insert(e.segment(o.a)).second)
      throw InputError("segment " + std::to_string(o.a) + " " + std::to_string(o.b) + " has two origins");
    e.set_origin(o.a, o.edge);
  }
  validate_associated(g, e);
  return e;
}

SimpleGraph underlying_graph(const EmbeddedGraph& e) {
  SimpleGraph g;
  for (VertexId v : e.true_vertices()) g.add_vertex(v);
  for (DartId d = 0; d < e.num_darts(); ++d) {
    const auto& o = e.origin(d);
    if (d < e.twin(d) && o && !g.has_edge(*o)) g.add_edge(o->u, o->v);
  }
  return g;
}

SimpleGraph underlying_graph(const EmbeddingSpec& spec) {
  std::set<VertexId> crossings(spec.crossings.begin(), spec.crossings.end());
  SimpleGraph g;
  for (const auto& [v, ds] : spec.rotation)
    if (!crossings.count(v)) g.add_vertex(v);
  for (const auto& o : spec.origins) {
    if (!g.has_vertex(o.edge.u) || !g.has_vertex(o.edge.v))
      throw InputError("origin edge " + to_string(o.edge) + " names a vertex that is not a true vertex");
    if (!g.has_edge(o.edge)) g.add_edge(o.edge.u, o.edge.v);
  }
  return g;
}

EmbeddedGraph from_face_cycles(Surface s, const std::vector<std::vector<VertexId>>& faces,
                               const std::set<VertexId>& crossings, const std::set<Edge>& new_edges) {
  std::map<std::pair<VertexId, VertexId>, DartId> dart_of;
  std::vector<std::pair<VertexId, VertexId>> ends;  // dart -> (owner, head)
  auto dart = [&](VertexId a, VertexId b) {
    auto it = dart_of.find({a, b});
    if (it != dart_of.end()) return it->second;
    DartId d = static_cast<DartId>(ends.size());
    dart_of[{a, b}] = d;
    dart_of[{b, a}] = d + 1;
    ends.emplace_back(a, b);
    ends.emplace_back(b, a);
    return d;
  };
  std::set<std::pair<VertexId, VertexId>> used;
  for (const auto& f : faces) {
    if (f.size() < 2) throw InputError("face with fewer than two vertices");
    for (std::size_t i = 0; i < f.size(); ++i) {
      VertexId a = f[i], b = f[(i + 1) % f.size()];
      if (a == b) throw InputError("loop in face cycle at " + std::to_string(a));
      if (!used.insert({a, b}).second)
        throw InputError("directed segment " + std::to_string(a) + "->" + std::to_string(b) +
                         " appears in two faces");
      dart(a, b);
    }
  }
  std::vector<DartId> next(ends.size(), -1);
  for (const auto& f : faces) {
    const std::size_t k = f.size();
    for (std::size_t i = 0; i < k; ++i) {
      VertexId prev = f[(i + k - 1) % k], cur = f[i], nxt = f[(i + 1) % k];
      DartId in = dart_of.at({cur, prev});
      next[in] = dart_of.at({cur, nxt});
    }
  }
  for (std::size_t d = 0; d < ends.size(); ++d)
    if (!used.count(ends[d]))
      throw InputError("segment " + std::to_string(ends[d].first) + "-" + std::to_string(ends[d].second) +
                       " bounds only one face side");

  std::map<VertexId, std::vector<DartId>> by_vertex;
  for (std::size_t d = 0; d < ends.size(); ++d) by_vertex[ends[d].first].push_back(static_cast<DartId>(d));
  std::vector<std::pair<VertexId, std::vector<DartId>>> rotation;
  for (auto& [v, ds] : by_vertex) {
    std::vector<DartId> cyc;
    DartId d = ds.front();
    do {
      cyc.push_back(d);
      d = next[d];
    } while (d != ds.front() && cyc.size() <= ds.size());
    if (cyc.size() != ds.size())
      throw InputError("faces around vertex " + std::to_string(v) + " do not form a single disk");
    rotation.emplace_back(v, std::move(cyc));
  }
  std::vector<std::pair<DartId, DartId>> twins;
  for (std::size_t d = 0; d < ends.size(); d += 2) twins.emplace_back(d, d + 1);
  EmbeddedGraph e = EmbeddedGraph::from_rotation(s, rotation, twins, crossings);

  for (DartId d = 0; d < e.num_darts(); d += 2) {
    VertexId a = e.owner(d), b = e.head(d);
    bool ca = e.is_crossing(a), cb = e.is_crossing(b);
    if (!ca && !cb) {
      if (!new_edges.count(Edge(a, b))) e.set_origin(d, Edge(a, b));
    } else if (ca != cb) {
      DartId at_x = ca ? d : e.twin(d);
      VertexId t = e.head(at_x);
      if (e.degree(e.owner(at_x)) == 4) {
        DartId opposite = e.next_ccw(e.next_ccw(at_x));
        VertexId other = e.head(opposite);
        if (other != t) e.set_origin(d, Edge(t, other));
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Faces

std::vector<Face> trace_faces(const EmbeddedGraph& e) {
  std::vector<Face> faces;
  std::vector<char> seen(e.num_darts(), 0);
  for (DartId d = 0; d < e.num_darts(); ++d) {
    if (seen[d]) continue;
    Face f;
    DartId x = d;
    do {
      seen[x] = 1;
      f.boundary.push_back(x);
      x = e.face_next(x);
    } while (x != d);
    faces.push_back(std::move(f));
  }
  return faces;
}

std::vector<int> face_index(const EmbeddedGraph& e, const std::vector<Face>& faces) {
  std::vector<int> idx(e.num_darts(), -1);
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (DartId d : faces[i].boundary) idx[d] = static_cast<int>(i);
  return idx;
}

std::vector<VertexId> face_vertices(const EmbeddedGraph& e, const Face& f) {
  std::vector<VertexId> out;
  out.reserve(f.boundary.size());
  for (DartId d : f.boundary) out.push_back(e.owner(d));
  return out;
}

bool face_is_cycle(const EmbeddedGraph& e, const Face& f) {
  auto vs = face_vertices(e, f);
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

int euler_characteristic(const EmbeddedGraph& e, int num_faces) {
  // A vertex without darts is a sphere of its own: one vertex, one face.
  int dartless = 0;
  for (VertexId v : e.vertices()) dartless += e.degree(v) == 0;
  return static_cast<int>(e.num_vertices()) - e.num_segments() + num_faces + dartless;
}

int euler_characteristic(const EmbeddedGraph& e) {
  return euler_characteristic(e, static_cast<int>(trace_faces(e).size()));
}

std::optional<std::string> validate_surface(const EmbeddedGraph& e) {
  int chi = euler_characteristic(e);
  int want = surface_characteristic(e.surface());
  if (chi == want) return std::nullopt;
  return "not 2-cell for declared surface: V - E + F = " + std::to_string(chi) + ", " + to_string(e.surface()) +
         " requires " + std::to_string(want);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

enum class Section { none, rotation, twins, crossings, origins };

}  // namespace

EmbeddingSpec read_embedding_spec(std::istream& in) {
  EmbeddingSpec spec;
  bool have_surface = false;
  Section sec = Section::none;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    throw InputError("embedding line " + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "surface:") {
      std::string s;
      if (!(ls >> s)) fail("expected 'surface: plane|torus'");
      try {
        spec.surface = parse_surface(s);
      } catch (const InputError& e) {
        fail(e.what());
      }
      have_surface = true;
      sec = Section::none;
      continue;
    }
    if (tok == "rotation:") { sec = Section::rotation; continue; }
    if (tok == "twins:") { sec = Section::twins; continue; }
    if (tok == "crossings:") { sec = Section::crossings; continue; }
    if (tok == "origins:") { sec = Section::origins; continue; }

    std::istringstream rs(line);
    switch (sec) {
      case Section::none:
        fail("content outside of a section: '" + tok + "'");
        break;
      case Section::rotation: {
        if (tok.back() != ':') fail("rotation lines look like 'v: d1 d2 ...'");
        VertexId v = 0;
        try {
          v = std::stoi(tok.substr(0, tok.size() - 1));
        } catch (const std::exception&) {
          fail("bad vertex id '" + tok + "'");
        }
        std::vector<DartId> ds;
        std::string t;
        while (ls >> t) {
          try {
            ds.push_back(std::stoi(t));
          } catch (const std::exception&) {
            fail("bad dart id '" + t + "'");
          }
        }
        spec.rotation.emplace_back(v, std::move(ds));
        break;
      }
      case Section::twins: {
        DartId a = 0, b = 0;
        std::string extra;
        if (!(rs >> a >> b) || (rs >> extra)) fail("twin lines look like 'd d2'");
        spec.twins.emplace_back(a, b);
        break;
      }
      case Section::crossings: {
        VertexId x = 0;
        while (rs >> x) spec.crossings.push_back(x);
        if (!rs.eof()) fail("crossing lines list vertex ids");
        break;
      }
      case Section::origins: {
        DartId a = 0, b = 0;
        std::string arrow;
        VertexId u = 0, v = 0;
        if (!(rs >> a >> b >> arrow >> u >> v) || arrow != "->") fail("origin lines look like 'd d2 -> u v'");
        if (u == v) fail("origin edge is a loop");
        spec.origins.push_back({a, b, Edge(u, v)});
        break;
      }
    }
  }
  if (!have_surface) throw InputError("embedding: missing 'surface:' line");
  return spec;
}

EmbeddingSpec read_embedding_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_embedding_spec(in);
}

void write_embedding_spec(std::ostream& out, const EmbeddingSpec& spec) {
  out << "surface: " << to_string(spec.surface) << '\n';
  out << "rotation:\n";
  for (const auto& [v, ds] : spec.rotation) {
    out << v << ':';
    for (DartId d : ds) out << ' ' << d;
    out << '\n';
  }
  out << "twins:\n";
  for (auto [a, b] : spec.twins) out << a << ' ' << b << '\n';
  out << "crossings:\n";
  for (VertexId x : spec.crossings) out << x << '\n';
  out << "origins:\n";
  for (const auto& o : spec.origins) out << o.a << ' ' << o.b << " -> " << o.edge.u << ' ' << o.edge.v << '\n';
}

void write_dot(std::ostream& out, const EmbeddedGraph& e, const std::set<DartId>& highlighted_segments) {
  out << "graph G {\n";
  for (VertexId v : e.vertices()) {
    out << "  " << v;
    if (e.is_crossing(v)) out << " [shape=circle, style=dashed, label=\"x" << v << "\"]";
    out << ";\n";
  }
  for (DartId d = 0; d < e.num_darts(); ++d) {
    if (d > e.twin(d)) continue;
    out << "  " << e.owner(d) << " -- " << e.head(d);
    if (highlighted_segments.count(d)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
}

}  // namespace totcol
