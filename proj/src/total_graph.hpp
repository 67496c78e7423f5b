#pragma once

#include <map>
#include <vector>

#include "totcol/coloring.hpp"

namespace totcol::detail {

// Dense conflict graph on vertices followed by edges.
struct TotalGraph {
  std::vector<VertexId> verts;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;

  explicit TotalGraph(const SimpleGraph& g) : verts(g.vertices()), edges(g.edges()) {
    std::map<VertexId, int> vi;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) vi[verts[i]] = i;
    const int nv = static_cast<int>(verts.size());
    adj.assign(verts.size() + edges.size(), {});
    std::vector<std::vector<int>> inc(verts.size());
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      int a = vi[edges[k].u], b = vi[edges[k].v], x = nv + k;
      adj[a].push_back(b);
      adj[b].push_back(a);
      adj[a].push_back(x);
      adj[x].push_back(a);
      adj[b].push_back(x);
      adj[x].push_back(b);
      inc[a].push_back(x);
      inc[b].push_back(x);
    }
    for (const auto& list : inc)
      for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          adj[list[i]].push_back(list[j]);
          adj[list[j]].push_back(list[i]);
        }
  }

  int size() const { return static_cast<int>(adj.size()); }

  TotalColoring to_coloring(const std::vector<int>& col, int kappa) const {
    TotalColoring c;
    c.kappa = kappa;
    const int nv = static_cast<int>(verts.size());
    for (int i = 0; i < nv; ++i)
      if (col[i] > 0) c.vertex_color[verts[i]] = col[i];
    for (int k = 0; k < static_cast<int>(edges.size()); ++k)
      if (col[nv + k] > 0) c.edge_color[edges[k]] = col[nv + k];
    return c;
  }
};

}  // namespace totcol::detail
