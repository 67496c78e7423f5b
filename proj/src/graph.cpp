#include "totcol/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "totcol/error.hpp"

namespace totcol {

std::ostream& operator<<(std::ostream& os, const Edge& e) { return os << e.u << '-' << e.v; }

std::string to_string(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

SimpleGraph SimpleGraph::from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                    const std::vector<VertexId>& isolated) {
  SimpleGraph g;
  for (VertexId v : isolated) g.add_vertex(v);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

void SimpleGraph::add_vertex(VertexId v) { adj_.try_emplace(v); }

void SimpleGraph::add_edge(VertexId a, VertexId b) {
  if (a == b) throw InputError("loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
  if (has_edge(a, b))
    throw InputError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  adj_[a].insert(b);
  adj_[b].insert(a);
  ++num_edges_;
}

void SimpleGraph::remove_edge(const Edge& e) {
  if (!has_edge(e)) throw PreconditionError("edge " + to_string(e) + " not in graph");
  adj_[e.u].erase(e.v);
  adj_[e.v].erase(e.u);
  --num_edges_;
}

bool SimpleGraph::has_edge(VertexId a, VertexId b) const {
  auto it = adj_.find(a);
  return it != adj_.end() && it->second.count(b) != 0;
}

int SimpleGraph::degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

const std::set<VertexId>& SimpleGraph::neighbors(VertexId v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw PreconditionError("unknown vertex " + std::to_string(v));
  return it->second;
}

int SimpleGraph::max_degree() const {
  int d = 0;
  for (const auto& [v, n] : adj_) d = std::max(d, static_cast<int>(n.size()));
  return d;
}

int SimpleGraph::min_degree() const {
  if (adj_.empty()) return 0;
  int d = static_cast<int>(adj_.begin()->second.size());
  for (const auto& [v, n] : adj_) d = std::min(d, static_cast<int>(n.size()));
  return d;
}

std::vector<VertexId> SimpleGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adj_.size());
  for (const auto& [v, n] : adj_) out.push_back(v);
  return out;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (const auto& [v, n] : adj_)
    for (VertexId w : n)
      if (v < w) out.emplace_back(v, w);
  return out;
}

SimpleGraph build_graph(const std::vector<std::pair<VertexId, VertexId>>& edges,
                        const std::vector<VertexId>& isolated) {
  return SimpleGraph::from_edges(edges, isolated);
}

SimpleGraph delete_edge(const SimpleGraph& g, const Edge& e) {
  SimpleGraph h = g;
  h.remove_edge(e);
  return h;
}

int edge_triangle_count(const SimpleGraph& g, const Edge& e) {
  if (!g.has_edge(e)) throw PreconditionError("edge " + to_string(e) + " not in graph");
  const auto& a = g.neighbors(e.u);
  const auto& b = g.neighbors(e.v);
  int n = 0;
  for (VertexId x : a) n += static_cast<int>(b.count(x));
  return n;
}

std::vector<Quad> find_k4s(const SimpleGraph& g) {
  // Grow cliques in increasing id order so each K4 is produced once.
  std::vector<Quad> out;
  for (VertexId a : g.vertices()) {
    const auto& na = g.neighbors(a);
    for (auto ib = na.upper_bound(a); ib != na.end(); ++ib) {
      VertexId b = *ib;
      std::vector<VertexId> common;
      for (auto ic = na.upper_bound(b); ic != na.end(); ++ic)
        if (g.has_edge(b, *ic)) common.push_back(*ic);
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j)
          if (g.has_edge(common[i], common[j])) out.push_back({a, b, common[i], common[j]});
    }
  }
  return out;
}

std::vector<DiamondWitness> find_induced_diamonds(const SimpleGraph& g) {
  // Each induced diamond is determined by its hub edge plus an unordered
  // pair of nonadjacent common neighbors.
  std::vector<DiamondWitness> out;
  for (const Edge& e : g.edges()) {
    std::vector<VertexId> common;
    const auto& nv = g.neighbors(e.v);
    for (VertexId x : g.neighbors(e.u))
      if (nv.count(x)) common.push_back(x);
    for (std::size_t i = 0; i < common.size(); ++i)
      for (std::size_t j = i + 1; j < common.size(); ++j)
        if (!g.has_edge(common[i], common[j]))
          out.push_back({{e.u, e.v}, {common[i], common[j]}});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string PropertyViolation::describe() const {
  std::ostringstream os;
  if (condition == Condition::k4_without_low_vertex) {
    os << "condition 1: K4 {";
  } else {
    os << "condition 2: diamond hub {" << vertices[0] << "," << vertices[1] << "} wing {"
       << vertices[2] << "," << vertices[3] << "}";
    return os.str();
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i];
  os << "} has no vertex of degree <= 4";
  return os.str();
}

PropertyReport check_property_P(const SimpleGraph& g) {
  PropertyReport r;
  for (const Quad& q : find_k4s(g)) {
    bool low = std::any_of(q.begin(), q.end(), [&](VertexId v) { return g.degree(v) <= 4; });
    if (!low)
      r.violations.push_back({PropertyViolation::Condition::k4_without_low_vertex,
                              std::vector<VertexId>(q.begin(), q.end())});
  }
  for (const DiamondWitness& d : find_induced_diamonds(g)) {
    int hub = std::max(g.degree(d.hub.first), g.degree(d.hub.second));
    int wing = std::max(g.degree(d.wing.first), g.degree(d.wing.second));
    if (hub > 5 && wing > 3)
      r.violations.push_back({PropertyViolation::Condition::diamond_degree_caps,
                              {d.hub.first, d.hub.second, d.wing.first, d.wing.second}});
  }
  r.holds = r.violations.empty();
  return r;
}

SimpleGraph read_edge_list(std::istream& in) {
  SimpleGraph g;
  std::string line;
  int lineno = 0;
  bool seen_edge = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& what) {
      throw InputError("edge list line " + std::to_string(lineno) + ": " + what);
    };
    if (first == "vertices") {
      long long n = -1;
      if (seen_edge) fail("'vertices' header must precede edges");
      if (!(ls >> n) || n < 0) fail("expected 'vertices N'");
      for (long long v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
      continue;
    }
    long long a = -1, b = -1;
    std::istringstream es(line);
    std::string extra;
    if (!(es >> a >> b) || a < 0 || b < 0) fail("expected two nonnegative integer ids");
    if (es >> extra) fail("trailing text '" + extra + "'");
    try {
      g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
    } catch (const InputError& e) {
      fail(e.what());
    }
    seen_edge = true;
  }
  return g;
}

SimpleGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  // The header is only needed when some vertex has no edge.
  bool has_isolated = false;
  for (VertexId v : g.vertices()) has_isolated |= g.degree(v) == 0;
  if (has_isolated) {
    auto vs = g.vertices();
    bool dense = !vs.empty() && vs.front() == 0 &&
                 vs.back() == static_cast<VertexId>(vs.size()) - 1;
    if (dense) {
      out << "vertices " << vs.size() << '\n';
    } else {
      out << "# isolated vertices are not representable without a dense id range\n";
    }
  }
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace totcol
