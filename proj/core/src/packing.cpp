#include "inflap/packing.hpp"

#include <algorithm>
#include <cmath>

namespace inflap {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

// Depth-first include-first search for an independent set of size k among
// eligible nodes (given in increasing index order, which is id order), so the
// first complete set found is the lexicographically smallest one.
bool find_independent_set(const std::vector<int>& eligible,
                          const std::vector<std::vector<char>>& conflict, int k,
                          std::size_t next, std::vector<int>& chosen) {
  if (static_cast<int>(chosen.size()) == k) return true;
  if (eligible.size() - next < static_cast<std::size_t>(k) - chosen.size()) return false;
  for (std::size_t i = next; i < eligible.size(); ++i) {
    int candidate = eligible[i];
    bool clash = false;
    for (int c : chosen)
      if (conflict[c][candidate]) {
        clash = true;
        break;
      }
    if (clash) continue;
    chosen.push_back(candidate);
    if (find_independent_set(eligible, conflict, k, i + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

bool feasible_at(const Graph& g, double r, int k, bool use_boundary, std::vector<int>& centers) {
  const int n = g.interior_count();
  std::vector<int> eligible;
  for (int u = 0; u < n; ++u) {
    if (!use_boundary || g.boundary_distance(u) >= r - kFeasibilitySlack) eligible.push_back(u);
  }
  if (static_cast<int>(eligible.size()) < k) return false;
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < eligible.size(); ++i)
    for (std::size_t j = i + 1; j < eligible.size(); ++j) {
      int u = eligible[i], v = eligible[j];
      if (g.distance(u, v) < 2.0 * r - kFeasibilitySlack) conflict[u][v] = conflict[v][u] = 1;
    }
  centers.clear();
  return find_independent_set(eligible, conflict, k, 0, centers);
}

}  // namespace

PackingResult packing_radius(const Graph& g, int k) {
  const int n = g.interior_count();
  if (k < 1) throw Error(Errc::invalid_argument, "packing_radius requires k >= 1");
  if (k > n)
    throw Error(Errc::k_too_large,
                "k = " + std::to_string(k) + " exceeds interior node count " + std::to_string(n));

  const bool use_boundary = g.has_boundary();
  if (!use_boundary && k == 1) {
    // No boundary constraint and a single ball: the radius is unbounded.
    return {1, kInf, {0}, true, kInf};
  }

  std::vector<double> candidates;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) candidates.push_back(g.distance(u, v) / 2.0);
  if (use_boundary)
    for (int u = 0; u < n; ++u) candidates.push_back(g.boundary_distance(u));
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  PackingResult result;
  result.k = k;
  result.no_boundary = !use_boundary;
  std::vector<int> centers;
  double previous = kInf;
  for (double r : candidates) {
    if (feasible_at(g, r, k, use_boundary, centers)) {
      result.radius = r;
      result.centers = centers;
      result.next_candidate = previous;
      return result;
    }
    previous = r;
  }
  // k <= n guarantees feasibility at the smallest candidate, where every
  // constraint is slack; reaching this point means the graph has a single
  // interior node and k == 1 with a boundary.
  throw Error(Errc::invalid_argument, "packing_radius: no feasible candidate radius");
}

std::vector<NodeFunction> cone_functions(const Graph& g, const std::vector<int>& centers, double r) {
  if (r <= 0.0) throw Error(Errc::invalid_argument, "cone_functions requires r > 0");
  std::vector<NodeFunction> out;
  out.reserve(centers.size());
  for (int c : centers) {
    if (c < 0 || c >= g.node_count())
      throw Error(Errc::invalid_argument, "cone_functions: unknown center index");
    if (g.is_boundary(c))
      throw Error(Errc::center_on_boundary, "center '" + g.id(c) + "' is a boundary node");
    auto dist = g.distances_from(c);
    NodeFunction f = NodeFunction::zeros(g.interior_count());
    for (int u = 0; u < g.interior_count(); ++u) f[u] = std::max(r - dist[u], 0.0);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace inflap
