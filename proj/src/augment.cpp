#include "totcol/augment.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "totcol/error.hpp"

namespace totcol {

namespace {

bool low_true(const EmbeddedGraph& e, const SimpleGraph& g, VertexId v) {
  return !e.is_crossing(v) && g.degree(v) <= 5;
}

Face walk(const EmbeddedGraph& e, DartId start) {
  Face f;
  DartId d = start;
  do {
    f.boundary.push_back(d);
    d = e.face_next(d);
  } while (d != start);
  return f;
}

}  // namespace

std::optional<std::pair<int, int>> find_eligible_pair(const EmbeddedGraph& e, const SimpleGraph& g,
                                                      const Face& f, AugmentOptions opts) {
  const int k = f.size();
  if (k < 4) return std::nullopt;
  std::optional<std::tuple<VertexId, VertexId, int, int>> best;
  for (int i = 0; i < k; ++i) {
    VertexId vi = e.owner(f.boundary[i]);
    if (!low_true(e, g, vi)) continue;
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      VertexId vj = e.owner(f.boundary[j]);
      if (vi == vj || !low_true(e, g, vj)) continue;
      if (opts.adjacent_pairs == AdjacentPairPolicy::skip && g.has_edge(vi, vj)) continue;
      auto key = std::make_tuple(std::min(vi, vj), std::max(vi, vj), i, j);
      if (!best || key < *best) best = key;
    }
  }
  if (!best) return std::nullopt;
  return std::make_pair(std::get<2>(*best), std::get<3>(*best));
}

AugmentedGraph build_g_star(const EmbeddedGraph& gd, const SimpleGraph& g, AugmentOptions opts) {
  AugmentedGraph a;
  a.base_ = gd;
  a.gstar_ = gd;
  a.g_ = g;
  EmbeddedGraph& e = a.gstar_;

  // Faces keyed by their smallest dart. Splitting a face leaves every other
  // face untouched, so a queue gives the same result as rescanning.
  auto min_dart = [](const Face& f) { return *std::min_element(f.boundary.begin(), f.boundary.end()); };
  using Item = std::pair<DartId, Face>;
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
  for (Face& f : trace_faces(e)) {
    DartId m = min_dart(f);
    queue.emplace(m, std::move(f));
  }
  int step = 0;
  while (!queue.empty()) {
    Face f = queue.top().second;
    queue.pop();
    auto pair = find_eligible_pair(e, g, f, opts);
    if (!pair) continue;
    auto [i, j] = *pair;
    Insertion ins;
    ins.step = ++step;
    ins.host_face = face_vertices(e, f);
    ins.a = e.owner(f.boundary[i]);
    ins.b = e.owner(f.boundary[j]);
    auto [x, y] = e.insert_segment(f.boundary[i], f.boundary[j], std::nullopt);
    ins.dart_a = x;
    ins.dart_b = y;
    a.insertions_.push_back(std::move(ins));
    for (DartId start : {x, y}) {
      Face part = walk(e, start);
      DartId m = min_dart(part);
      queue.emplace(m, std::move(part));
    }
  }
  a.finish();
  return a;
}

AugmentedGraph AugmentedGraph::from_gstar(EmbeddedGraph gstar) {
  AugmentedGraph a;
  a.g_ = underlying_graph(gstar);
  for (DartId d = 0; d < gstar.num_darts(); ++d) {
    if (gstar.origin(d)) continue;
    if (gstar.is_crossing(gstar.owner(d)) || gstar.is_crossing(gstar.head(d)))
      throw InputError("new edge at crossing vertex " +
                       std::to_string(gstar.is_crossing(gstar.owner(d)) ? gstar.owner(d) : gstar.head(d)));
  }
  a.gstar_ = std::move(gstar);
  a.finish();
  return a;
}

void AugmentedGraph::finish() {
  faces_ = trace_faces(gstar_);
  face_of_ = face_index(gstar_, faces_);
  classes_.clear();
  class_ids_ = gstar_.vertices();
  for (VertexId v : class_ids_) {
    VertexClass c;
    c.vertex = v;
    c.kind = gstar_.kind(v);
    c.d2 = gstar_.degree(v);
    if (c.kind == VertexKind::true_vertex) c.d1 = g_.degree(v);
    for (DartId d : gstar_.rotation(v)) c.new_incident |= !gstar_.origin(d).has_value();
    c.big = c.kind == VertexKind::true_vertex && ((c.d1 == 3 && c.d2 == 5) || c.d2 >= 6);
    classes_.push_back(c);
  }
}

bool AugmentedGraph::is_new_edge(DartId d) const {
  if (d < 0 || d >= gstar_.num_darts()) throw PreconditionError("unknown segment " + std::to_string(d));
  return !gstar_.origin(d).has_value();
}

const VertexClass& AugmentedGraph::vertex_class(VertexId v) const {
  auto it = std::lower_bound(class_ids_.begin(), class_ids_.end(), v);
  if (it == class_ids_.end() || *it != v) throw PreconditionError("unknown vertex " + std::to_string(v));
  return classes_[static_cast<std::size_t>(it - class_ids_.begin())];
}

int AugmentedGraph::d1(VertexId v) const {
  const auto& c = vertex_class(v);
  return c.d1.value_or(0);
}

int AugmentedGraph::big_occurrences(int face) const {
  int n = 0;
  for (DartId d : faces_[face].boundary) n += is_big(gstar_.owner(d));
  return n;
}

std::vector<VertexClass> classify_vertices(const AugmentedGraph& a) { return a.classification(); }

bool is_new_edge(const AugmentedGraph& a, DartId d) { return a.is_new_edge(d); }

AugmentCheck check_augmented(const AugmentedGraph& a, AugmentOptions opts) {
  AugmentCheck r;
  const EmbeddedGraph& e = a.gstar();
  for (const Face& f : a.faces()) {
    if (!face_is_cycle(e, f)) {
      r.faces_are_cycles = false;
      r.problems.push_back("face starting at dart " + std::to_string(f.boundary.front()) + " is not a cycle");
    }
    if (find_eligible_pair(e, a.graph(), f, opts)) {
      r.fixpoint = false;
      r.problems.push_back("face starting at dart " + std::to_string(f.boundary.front()) +
                           " still has an eligible pair");
    }
  }
  std::map<Edge, std::vector<DartId>> parallel;
  for (DartId d = 0; d < e.num_darts(); ++d) {
    if (d > e.twin(d)) continue;
    VertexId u = e.owner(d), v = e.head(d);
    if (e.is_crossing(u) && e.is_crossing(v)) {
      r.crossings_independent = false;
      r.problems.push_back("crossing vertices " + std::to_string(u) + " and " + std::to_string(v) + " adjacent");
    }
    if (a.is_new_edge(d)) {
      bool low = !e.is_crossing(u) && !e.is_crossing(v) && a.graph().degree(u) <= 5 && a.graph().degree(v) <= 5;
      if (!low) {
        r.new_edges_low_degree = false;
        r.problems.push_back("new edge " + std::to_string(u) + "-" + std::to_string(v) + " has a high-degree end");
      }
    }
    parallel[Edge(u, v)].push_back(d);
  }
  for (const auto& [pair, segs] : parallel) {
    if (segs.size() < 2) continue;
    for (DartId d : segs) {
      if (!a.is_new_edge(d)) {
        r.parallel_segments_new = false;
        r.problems.push_back("parallel segments " + to_string(pair) + " include an original segment");
        break;
      }
    }
  }
  if (const EmbeddedGraph* base = a.base()) {
    if (euler_characteristic(*base) != euler_characteristic(e, static_cast<int>(a.faces().size()))) {
      r.euler_preserved = false;
      r.problems.push_back("Euler characteristic changed by augmentation");
    }
  }
  return r;
}

}  // namespace totcol
