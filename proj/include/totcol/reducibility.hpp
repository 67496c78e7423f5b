#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "totcol/graph.hpp"

namespace totcol {

struct ReducibleEdge {
  Edge edge;
  VertexId v = 0;  // the low-degree end
  std::optional<VertexId> w;  // third triangle vertex when the P3 extension applies
};

// The edge with deg(v) <= floor((kappa-1)/2) and deg(u) + deg(v) <= kappa
// that is smallest in (deg v, deg u, edge) order, so leaves go first.
std::optional<ReducibleEdge> find_reducible_edge(const SimpleGraph& g, int kappa);
// As above but also returns P3 edges (degree sum kappa + 1 on a triangle)
// when no P1 edge exists.
std::optional<ReducibleEdge> find_extendable_edge(const SimpleGraph& g, int kappa);

enum class AuditStatus { pass, fail, skipped };
std::string to_string(AuditStatus s);

struct AuditItem {
  std::string property;  // P1..P5, Claim1
  AuditStatus status = AuditStatus::pass;
  std::vector<std::string> witnesses;
};

struct MinimalityAudit {
  int kappa = 0;
  std::vector<AuditItem> results;
  const AuditItem& at(const std::string& property) const;
  // True when no property fails.
  bool consistent_with_minimality() const;
};

// Throws PreconditionError when kappa < max degree + 2.
MinimalityAudit audit_minimality(const SimpleGraph& g, int kappa);

bool is_connected(const SimpleGraph& g);
bool is_biconnected(const SimpleGraph& g);

// Canonical code of a graph on vertices 0..n-1 (n <= 8), invariant under
// relabeling.
std::uint64_t canonical_code(const SimpleGraph& g);

// Connected graphs with exactly n vertices (0..n-1), one per isomorphism
// class, in canonical order.
std::vector<SimpleGraph> connected_graphs(int n);
// All connected graphs with 1..n_max vertices.
std::vector<SimpleGraph> connected_graphs_up_to(int n_max);

struct BruteOptions {
  int n_min = 1;
  int n_max = 5;
  int exhaustive_up_to = 5;       // graphs with at most this many vertices get every coloring
  int sample_cap = 1000;          // colorings per (graph, edge, kappa) above that
  std::int64_t exhaustive_cap = 0;  // 0 = no cap; otherwise stop enumerating after this many
  std::uint64_t seed = 7;
};

struct BruteReport {
  int instances = 0;     // (graph, kappa, edge, end) combinations
  std::int64_t p1_calls = 0;
  std::int64_t p3_calls = 0;
  std::int64_t failures = 0;
  bool exhaustive = true;  // every instance enumerated completely
  std::vector<std::string> certificates;
};

// Runs extend_p1 / extend_p3 over every eligible edge of every connected
// graph with at most n_max vertices, for kappa in {D+2, D+3}, and verifies
// each result.
BruteReport brute_validate_extensions(const BruteOptions& opts);

}  // namespace totcol
