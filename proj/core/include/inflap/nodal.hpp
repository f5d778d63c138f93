#pragma once

#include "inflap/graph.hpp"
#include "inflap/inf_spectral.hpp"

#include <string>
#include <utility>
#include <vector>

namespace inflap {

/// Maximal connected subset of interior nodes on which f keeps a strict sign.
/// Node indices refer to the original graph.
struct NodalDomain {
  int sign = 0;  // +1 or -1
  std::vector<int> nodes;
};

/// Counts nodal domains; nodes with |f(u)| <= zero_tol belong to none.
std::pair<int, std::vector<NodalDomain>> nodal_domains(const Graph& g, const NodeFunction& f,
                                                       double zero_tol = 1e-12);

/// Result of the zero-splitting surgery: zero nodes become boundary, and each
/// sign-change edge (u,v) is replaced by (u,w), (w,v) through a synthesized
/// boundary node w = "z:<a>:<b>" with conjugate weights
///   w_uw = w_uv (1 - f(v)/f(u)),  w_wv = w_uv (1 - f(u)/f(v)),
/// so 1/w_uw + 1/w_wv = 1/w_uv and gradients on the halves match the original.
/// The split graph's interior components are exactly the nodal domains.
struct NodalDecomposition {
  std::vector<NodalDomain> domains;
  Graph split_graph;
  /// One entry per original edge; synthesized_id is empty for kept edges.
  struct EdgeRecord {
    int original_edge = 0;
    std::string synthesized_id;
  };
  std::vector<EdgeRecord> edge_map;
};

NodalDecomposition split_at_zeros(const Graph& g, const NodeFunction& f, double zero_tol = 1e-12);

/// Extracts one nodal domain of a decomposition as a standalone connected
/// graph (domain nodes interior, adjacent split-graph nodes as boundary)
/// together with the restriction of f, for checking the limit equation
/// component by component.
std::pair<Graph, NodeFunction> extract_component(const Graph& g, const NodeFunction& f,
                                                 const NodalDecomposition& decomposition,
                                                 int domain_index);

/// Verifies the packing lower bound 1/R_{N(f)} <= Lambda for a pair that
/// passes the limit equation; throws Errc::precondition_failed otherwise.
struct NodalBoundsReport {
  int domain_count = 0;
  double lambda = 0.0;
  double lower_bound = 0.0;  // 1/R_{N(f)}
  bool ok = false;
};

NodalBoundsReport nodal_bounds_check(const Graph& g, const NodeFunction& f, double lambda,
                                     Tolerance tol = {});

}  // namespace inflap
