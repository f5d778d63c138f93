#pragma once

#include "inflap/graph.hpp"

#include <vector>

namespace inflap {

/// Witness for the k-ball packing problem: k interior centers pairwise at
/// distance >= 2*radius, each at distance >= radius from the boundary.
/// For k = 1 on a boundaryless graph the radius is +inf and no_boundary is
/// set; for k >= 2 without boundary only the pairwise constraint applies.
struct PackingResult {
  int k = 0;
  double radius = 0.0;
  std::vector<int> centers;
  bool no_boundary = false;
  /// Next-larger candidate radius, at which feasibility provably fails;
  /// +inf when radius is already the largest candidate.
  double next_candidate = kInf;
};

/// Exact k-th packing radius over the finite candidate set
/// { d(u,v)/2 : u,v interior } u { d_B(u) : u interior }; the optimum is a
/// threshold value of the feasibility predicate, so it always lies in this
/// set. Centers are the lexicographically smallest witnessing id tuple.
/// Feasibility at a candidate r is decided by branch-and-bound search for an
/// independent set of size k in the conflict graph on { u : d_B(u) >= r }
/// with conflicts where d(u,v) < 2r.
PackingResult packing_radius(const Graph& g, int k);

/// Cone test functions f_i(u) = max{ r - d(u, center_i), 0 } on interior
/// nodes, the building blocks of the variational upper bound.
std::vector<NodeFunction> cone_functions(const Graph& g, const std::vector<int>& centers, double r);

}  // namespace inflap
