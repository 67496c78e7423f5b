#include "totcol/reducibility.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "total_graph.hpp"
#include "totcol/coloring.hpp"
#include "totcol/error.hpp"
#include "totcol/random.hpp"

namespace totcol {

using detail::TotalGraph;

namespace {

std::optional<VertexId> triangle_apex(const SimpleGraph& g, VertexId u, VertexId v) {
  for (VertexId w : g.neighbors(v))
    if (w != u && g.has_edge(u, w)) return w;
  return std::nullopt;
}

}  // namespace

std::optional<ReducibleEdge> find_reducible_edge(const SimpleGraph& g, int kappa) {
  const int low = (kappa - 1) / 2;
  std::optional<ReducibleEdge> best;
  std::tuple<int, int, Edge> best_key;
  for (const Edge& e : g.edges())
    for (VertexId v : {e.u, e.v}) {
      int dv = g.degree(v), du = g.degree(e.other(v));
      if (dv > low || du + dv > kappa) continue;
      std::tuple<int, int, Edge> key{dv, du, e};
      if (!best || key < best_key) {
        best = ReducibleEdge{e, v, std::nullopt};
        best_key = key;
      }
    }
  return best;
}

std::optional<ReducibleEdge> find_extendable_edge(const SimpleGraph& g, int kappa) {
  if (auto r = find_reducible_edge(g, kappa)) return r;
  const int low = (kappa - 1) / 2;
  for (const Edge& e : g.edges())
    for (VertexId v : {e.u, e.v}) {
      VertexId u = e.other(v);
      if (g.degree(v) <= low && g.degree(u) + g.degree(v) == kappa + 1)
        if (auto w = triangle_apex(g, u, v)) return ReducibleEdge{e, v, w};
    }
  return std::nullopt;
}

std::string to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::pass: return "pass";
    case AuditStatus::fail: return "fail";
    case AuditStatus::skipped: return "skipped";
  }
  return "?";
}

const AuditItem& MinimalityAudit::at(const std::string& property) const {
  for (const auto& r : results)
    if (r.property == property) return r;
  throw PreconditionError("no audit result for " + property);
}

bool MinimalityAudit::consistent_with_minimality() const {
  return std::none_of(results.begin(), results.end(), [](const AuditItem& r) { return r.status == AuditStatus::fail; });
}

bool is_connected(const SimpleGraph& g) {
  auto vs = g.vertices();
  if (vs.empty()) return true;
  std::set<VertexId> seen{vs.front()};
  std::vector<VertexId> stack{vs.front()};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : g.neighbors(x))
      if (seen.insert(y).second) stack.push_back(y);
  }
  return seen.size() == vs.size();
}

bool is_biconnected(const SimpleGraph& g) {
  if (g.num_vertices() < 3) return g.num_vertices() == 2 ? g.num_edges() == 1 : false;
  if (!is_connected(g)) return false;
  // Articulation points by lowpoint DFS.
  std::map<VertexId, int> disc, low;
  int timer = 0;
  bool cut = false;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId v, VertexId parent) {
    disc[v] = low[v] = ++timer;
    int children = 0;
    for (VertexId w : g.neighbors(v)) {
      if (w == parent) continue;
      if (disc.count(w)) {
        low[v] = std::min(low[v], disc[w]);
        continue;
      }
      ++children;
      dfs(w, v);
      low[v] = std::min(low[v], low[w]);
      if (parent != -1 && low[w] >= disc[v]) cut = true;
    }
    if (parent == -1 && children > 1) cut = true;
  };
  dfs(g.vertices().front(), -1);
  return !cut;
}

MinimalityAudit audit_minimality(const SimpleGraph& g, int kappa) {
  if (kappa < g.max_degree() + 2)
    throw PreconditionError("audit needs kappa >= max degree + 2 (got kappa " + std::to_string(kappa) +
                            ", max degree " + std::to_string(g.max_degree()) + ")");
  MinimalityAudit a;
  a.kappa = kappa;
  const int low = (kappa - 1) / 2;
  auto edge_text = [](VertexId u, VertexId v) { return std::to_string(u) + "-" + std::to_string(v); };

  AuditItem p1{"P1", AuditStatus::pass, {}};
  AuditItem p3{"P3", AuditStatus::pass, {}};
  for (const Edge& e : g.edges())
    for (VertexId v : {e.u, e.v}) {
      VertexId u = e.other(v);
      int dv = g.degree(v), du = g.degree(u);
      if (dv > low) continue;
      if (du + dv <= kappa)
        p1.witnesses.push_back("edge " + edge_text(u, v) + ": deg " + std::to_string(dv) + " + " + std::to_string(du) +
                               " <= " + std::to_string(kappa));
      if (du + dv == kappa + 1)
        if (auto w = triangle_apex(g, u, v))
          p3.witnesses.push_back("edge " + edge_text(u, v) + " in triangle with " + std::to_string(*w));
    }
  if (!p1.witnesses.empty()) p1.status = AuditStatus::fail;
  if (!p3.witnesses.empty()) p3.status = AuditStatus::fail;

  AuditItem p2{"P2", AuditStatus::pass, {}};
  for (VertexId v : g.vertices())
    if (g.degree(v) < 3) p2.witnesses.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
  if (!is_biconnected(g)) p2.witnesses.push_back("graph is not 2-connected");
  if (!p2.witnesses.empty()) p2.status = AuditStatus::fail;

  AuditItem p4{"P4", AuditStatus::skipped, {}};
  if (kappa >= 7) {
    p4.status = AuditStatus::pass;
    for (VertexId v : g.vertices()) {
      if (g.degree(v) != 3) continue;
      std::vector<VertexId> n(g.neighbors(v).begin(), g.neighbors(v).end());
      for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = i + 1; j < n.size(); ++j)
          if (g.has_edge(n[i], n[j]))
            p4.witnesses.push_back("3-vertex " + std::to_string(v) + " has adjacent neighbors " + edge_text(n[i], n[j]));
    }
    if (!p4.witnesses.empty()) p4.status = AuditStatus::fail;
  }

  AuditItem p5{"P5", AuditStatus::skipped, {}};
  if (kappa >= 9) {
    p5.status = AuditStatus::pass;
    for (VertexId v : g.vertices()) {
      if (g.degree(v) != 4) continue;
      for (VertexId w : g.neighbors(v))
        if (edge_triangle_count(g, Edge(v, w)) >= 2)
          p5.witnesses.push_back("edge " + edge_text(v, w) + " at 4-vertex " + std::to_string(v) + " lies in two triangles");
    }
    if (!p5.witnesses.empty()) p5.status = AuditStatus::fail;
  }

  AuditItem c1{"Claim1", AuditStatus::skipped, {}};
  if (check_property_P(g).holds) {
    c1.status = AuditStatus::pass;
    for (const Quad& q : find_k4s(g))
      c1.witnesses.push_back("K4 {" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) +
                             "," + std::to_string(q[3]) + "}");
    if (!c1.witnesses.empty()) c1.status = AuditStatus::fail;
  }

  a.results = {p1, p2, p3, p4, p5, c1};
  return a;
}

// ---- small graph enumeration ----------------------------------------------

namespace {

struct Dense {
  int n = 0;
  std::uint32_t adj[8] = {};
  bool has(int i, int j) const { return (adj[i] >> j) & 1u; }
};

Dense to_dense(const SimpleGraph& g) {
  auto vs = g.vertices();
  if (vs.size() > 8) throw PreconditionError("canonical form supports at most 8 vertices");
  std::map<VertexId, int> idx;
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) idx[vs[i]] = i;
  Dense d;
  d.n = static_cast<int>(vs.size());
  for (const Edge& e : g.edges()) {
    d.adj[idx[e.u]] |= 1u << idx[e.v];
    d.adj[idx[e.v]] |= 1u << idx[e.u];
  }
  return d;
}

std::uint64_t code_under(const Dense& d, const std::vector<int>& perm) {
  std::uint64_t code = 0;
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j) code = (code << 1) | (d.has(perm[i], perm[j]) ? 1u : 0u);
  return code;
}

// Minimum code over orderings that sort vertices by a relabeling-invariant
// signature; only permutations inside a signature class are tried.
std::pair<std::uint64_t, std::vector<int>> canonical(const Dense& d) {
  std::vector<std::pair<std::vector<int>, int>> sig;
  for (int v = 0; v < d.n; ++v) {
    std::vector<int> s{__builtin_popcount(d.adj[v])};
    std::vector<int> nd;
    for (int w = 0; w < d.n; ++w)
      if (d.has(v, w)) nd.push_back(__builtin_popcount(d.adj[w]));
    std::sort(nd.begin(), nd.end());
    s.insert(s.end(), nd.begin(), nd.end());
    sig.emplace_back(s, v);
  }
  std::sort(sig.begin(), sig.end());
  std::vector<int> perm;
  std::vector<std::pair<int, int>> classes;  // [begin, end)
  for (int i = 0; i < d.n; ++i) {
    perm.push_back(sig[i].second);
    if (i == 0 || sig[i].first != sig[i - 1].first) classes.emplace_back(i, i + 1);
    else classes.back().second = i + 1;
  }
  for (auto [b, e] : classes) std::sort(perm.begin() + b, perm.begin() + e);
  std::uint64_t best = ~0ULL;
  std::vector<int> best_perm = perm;
  std::function<void(std::size_t)> go = [&](std::size_t c) {
    if (c == classes.size()) {
      std::uint64_t code = code_under(d, perm);
      if (code < best) {
        best = code;
        best_perm = perm;
      }
      return;
    }
    auto [b, e] = classes[c];
    std::sort(perm.begin() + b, perm.begin() + e);
    do {
      go(c + 1);
    } while (std::next_permutation(perm.begin() + b, perm.begin() + e));
  };
  go(0);
  return {(static_cast<std::uint64_t>(d.n) << 56) | best, best_perm};
}

SimpleGraph from_dense_perm(const Dense& d, const std::vector<int>& perm) {
  std::vector<int> pos(d.n);
  for (int i = 0; i < d.n; ++i) pos[perm[i]] = i;
  SimpleGraph g;
  for (int i = 0; i < d.n; ++i) g.add_vertex(i);
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j)
      if (d.has(i, j)) g.add_edge(pos[i], pos[j]);
  return g;
}

// All graphs on n vertices up to isomorphism, keyed by canonical code.
std::map<std::uint64_t, Dense> all_graphs(int n) {
  std::map<std::uint64_t, Dense> out;
  if (n <= 0) return out;
  if (n == 1) {
    Dense d;
    d.n = 1;
    out.emplace(canonical(d).first, d);
    return out;
  }
  for (const auto& [code, base] : all_graphs(n - 1)) {
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      Dense d = base;
      d.n = n;
      d.adj[n - 1] = mask;
      for (int i = 0; i < n - 1; ++i)
        if ((mask >> i) & 1u) d.adj[i] |= 1u << (n - 1);
      out.emplace(canonical(d).first, d);
    }
  }
  return out;
}

}  // namespace

std::uint64_t canonical_code(const SimpleGraph& g) { return canonical(to_dense(g)).first; }

std::vector<SimpleGraph> connected_graphs(int n) {
  if (n > 8) throw PreconditionError("enumeration supports at most 8 vertices");
  std::vector<SimpleGraph> out;
  for (const auto& [code, d] : all_graphs(n)) {
    SimpleGraph g = from_dense_perm(d, canonical(d).second);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<SimpleGraph> connected_graphs_up_to(int n_max) {
  std::vector<SimpleGraph> out;
  for (int n = 1; n <= n_max; ++n) {
    auto part = connected_graphs(n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---- brute-force validation -----------------------------------------------

namespace {

struct Instance {
  const SimpleGraph* g;
  Edge uv;
  VertexId v;
  std::optional<VertexId> w;
  int kappa;
};

// Calls visit(coloring) on proper kappa-colorings in a fixed DFS order. The
// exhaustive walk lists one coloring per class under renaming of colors (a new
// color is always the smallest unused one): the extension procedures only ask
// whether colors with given properties exist, which renaming preserves. With
// rng set, colors are tried in random order without that restriction and the
// walk stops at the first complete coloring. Returns false when visit asked to
// stop.
bool enumerate_colorings(const TotalGraph& t, int kappa, Rng* rng, const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = t.size();
  std::vector<int> col(n, 0);
  std::function<bool(int, int)> go = [&](int x, int used) {
    if (x == n) return visit(col);
    std::vector<int> order(rng ? kappa : std::min(kappa, used + 1));
    std::iota(order.begin(), order.end(), 1);
    if (rng)
      for (int i = kappa - 1; i > 0; --i) std::swap(order[i], order[draw_below(*rng, i + 1)]);
    for (int c : order) {
      bool ok = true;
      for (int y : t.adj[x])
        if (y < x && col[y] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      col[x] = c;
      if (!go(x + 1, std::max(used, c))) return false;
      col[x] = 0;
    }
    return true;
  };
  return go(0, 0);
}

}  // namespace

BruteReport brute_validate_extensions(const BruteOptions& opts) {
  if (opts.n_max > 7) throw PreconditionError("brute validation supports n_max <= 7");
  BruteReport rep;
  Rng rng(opts.seed);
  for (const SimpleGraph& g : connected_graphs_up_to(opts.n_max)) {
    const int n = static_cast<int>(g.num_vertices());
    if (n < opts.n_min) continue;
    const int delta = g.max_degree();
    for (int kappa : {delta + 2, delta + 3}) {
      const int low = (kappa - 1) / 2;
      std::vector<Instance> instances;
      for (const Edge& e : g.edges())
        for (VertexId v : {e.u, e.v}) {
          VertexId u = e.other(v);
          int dv = g.degree(v), du = g.degree(u);
          if (dv > low) continue;
          if (du + dv <= kappa) instances.push_back({&g, e, v, std::nullopt, kappa});
          else if (du + dv == kappa + 1)
            for (VertexId w : g.neighbors(v))
              if (w != u && g.has_edge(u, w)) instances.push_back({&g, e, v, w, kappa});
        }
      for (const Instance& in : instances) {
        ++rep.instances;
        SimpleGraph h = delete_edge(g, in.uv);
        TotalGraph t(h);
        auto run = [&](const std::vector<int>& col) {
          TotalColoring c = t.to_coloring(col, kappa);
          try {
            TotalColoring out = in.w ? extend_p3(g, in.uv, in.v, *in.w, c, kappa) : extend_p1(g, in.uv, in.v, c, kappa);
            (in.w ? rep.p3_calls : rep.p1_calls)++;
            if (!verify(g, out).ok) {
              ++rep.failures;
              rep.certificates.push_back("extension of " + to_string(in.uv) + " does not verify");
            }
          } catch (const ExtensionFailure& f) {
            (in.w ? rep.p3_calls : rep.p1_calls)++;
            ++rep.failures;
            rep.certificates.push_back(f.what());
          }
        };
        if (n <= opts.exhaustive_up_to) {
          std::int64_t seen = 0;
          bool complete = enumerate_colorings(t, kappa, nullptr, [&](const std::vector<int>& col) {
            run(col);
            ++seen;
            return opts.exhaustive_cap == 0 || seen < opts.exhaustive_cap;
          });
          if (!complete) rep.exhaustive = false;
        } else {
          rep.exhaustive = false;
          for (int s = 0; s < opts.sample_cap; ++s)
            enumerate_colorings(t, kappa, &rng, [&](const std::vector<int>& col) {
              run(col);
              return false;
            });
        }
      }
    }
  }
  return rep;
}

}  // namespace totcol
