#pragma once

// Shared helpers for the unit and acceptance suites: fixture loading, the
// independent oracles the spec-derived expected values were computed with,
// and seeded random-instance generators. Everything here stays independent
// of the implementation paths it is used to check: distances come from
// exhaustive simple-path enumeration, packing radii from exhaustive subset
// search, p = 2 eigenvalues from the 2x2 characteristic polynomial, and
// gradients from central finite differences.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "inflap/fixtures.hpp"
#include "inflap/graph.hpp"
#include "inflap/operators.hpp"
#include "inflap/p_spectral.hpp"

namespace testsupport {

inline inflap::Graph fx_graph(const std::string& name) {
  return inflap::validate_graph(inflap::fixture(name).graph);
}

inline inflap::NodeFunction fx_function(const inflap::Graph& g, const std::string& fixture_name,
                                        const std::string& function_name) {
  auto fx = inflap::fixture(fixture_name);
  for (const auto& fn : fx.functions) {
    if (fn.name != function_name) continue;
    auto f = inflap::NodeFunction::zeros(g.interior_count());
    for (const auto& [id, value] : fn.values) f[g.index(id)] = value;
    return f;
  }
  throw std::runtime_error("no fixture function " + fixture_name + "/" + function_name);
}

inline inflap::NodeFunction make_function(const inflap::Graph& g,
                                          const std::map<std::string, double>& values) {
  auto f = inflap::NodeFunction::zeros(g.interior_count());
  for (const auto& [id, value] : values) f[g.index(id)] = value;
  return f;
}

inline double edge_value(const inflap::Graph& g, const inflap::EdgeFunction& G,
                         const std::string& from, const std::string& to) {
  int u = g.index(from), v = g.index(to);
  int e = g.edge_between(u, v);
  if (e < 0) throw std::runtime_error("no edge " + from + "-" + to);
  return g.edges()[e].u == u ? G.forward(e) : G.backward(e);
}

// ---- independent oracles ----------------------------------------------

// Exhaustive enumeration of simple paths; exponential, fixture-sized only.
inline double enumerated_distance(const inflap::Graph& g, int source, int target) {
  double best = inflap::kInf;
  std::vector<char> on_path(g.node_count(), 0);
  auto walk = [&](auto&& self, int node, double length) -> void {
    if (length >= best) return;
    if (node == target) {
      best = length;
      return;
    }
    on_path[node] = 1;
    for (const auto& a : g.neighbors(node))
      if (!on_path[a.to]) self(self, a.to, length + 1.0 / a.weight);
    on_path[node] = 0;
  };
  walk(walk, source, 0.0);
  return best;
}

// Exhaustive center subsets x exhaustive candidate radii.
struct BruteForcePacking {
  double radius = 0.0;
  std::vector<int> centers;
};

inline BruteForcePacking brute_force_packing(const inflap::Graph& g, int k) {
  const int n = g.interior_count();
  std::vector<double> candidates;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) candidates.push_back(g.distance(u, v) / 2.0);
  if (g.has_boundary())
    for (int u = 0; u < n; ++u) candidates.push_back(g.boundary_distance(u));
  std::sort(candidates.begin(), candidates.end(), std::greater<>());

  std::vector<int> subset(k);
  for (double r : candidates) {
    // enumerate all k-subsets in lexicographic order
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (g.has_boundary() && g.boundary_distance(subset[i]) < r - 1e-12) ok = false;
        for (int j = i + 1; j < k && ok; ++j)
          if (g.distance(subset[i], subset[j]) < 2.0 * r - 1e-12) ok = false;
      }
      if (ok) return {r, subset};
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  throw std::runtime_error("brute_force_packing: infeasible");
}

// Eigenvalues of [[a, b], [b, c]] by the characteristic polynomial.
inline std::pair<double, double> char_poly_eigenvalues_2x2(double a, double b, double c) {
  double mean = (a + c) / 2.0;
  double disc = std::sqrt((a - c) * (a - c) / 4.0 + b * b);
  return {mean - disc, mean + disc};
}

// Central finite differences of f -> ||grad f||_p^p - lambda ||f||_p^p,
// evaluated from scratch in extended precision (the energy reaches ~w_max^p,
// so double-precision differences would drown small gradient components).
inline std::vector<double> fd_eigen_gradient(const inflap::Graph& g, const inflap::NodeFunction& f,
                                             double lambda, double p, double step = 1e-6) {
  auto energy = [&](const inflap::NodeFunction& h) -> long double {
    long double edge_sum = 0.0L;
    for (const auto& e : g.edges()) {
      long double d = static_cast<long double>(e.weight) *
                      (g.value_or_zero(h, e.v) - g.value_or_zero(h, e.u));
      edge_sum += std::pow(std::abs(d), static_cast<long double>(p));
    }
    long double node_sum = 0.0L;
    for (int u = 0; u < h.size(); ++u)
      node_sum += std::pow(std::abs(static_cast<long double>(h[u])), static_cast<long double>(p));
    return edge_sum - static_cast<long double>(lambda) * node_sum;
  };
  std::vector<double> out(f.size());
  for (int u = 0; u < f.size(); ++u) {
    inflap::NodeFunction plus = f, minus = f;
    plus[u] += step;
    minus[u] -= step;
    out[u] = static_cast<double>((energy(plus) - energy(minus)) / (2.0L * step));
  }
  return out;
}

// ---- random instances ---------------------------------------------------

struct RandomGraphOptions {
  int min_interior = 2;
  int max_interior = 10;
  int max_edges = 20;
  int max_boundary = 3;
  bool force_boundary = false;
};

// Connected interior (spanning tree first), boundary nodes hang off random
// interior nodes, weights are random small rationals.
inline inflap::GraphData random_graph_data(std::mt19937& rng, const RandomGraphOptions& opts = {}) {
  std::uniform_int_distribution<int> interior_count(opts.min_interior, opts.max_interior);
  std::uniform_int_distribution<int> digit(1, 9);
  auto weight = [&] { return static_cast<double>(digit(rng)) / static_cast<double>(digit(rng)); };

  const int n = interior_count(rng);
  inflap::GraphData data;
  for (int i = 0; i < n; ++i) data.nodes.push_back({"u" + std::to_string(i + 1), false});

  std::set<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    int j = parent(rng);
    used.insert({j, i});
    data.edges.push_back({data.nodes[j].id, data.nodes[i].id, weight()});
  }

  int budget = opts.max_edges - static_cast<int>(data.edges.size());
  std::uniform_int_distribution<int> boundary_count(opts.force_boundary ? 1 : 0, opts.max_boundary);
  int b = std::min(boundary_count(rng), std::max(budget, opts.force_boundary ? 1 : 0));
  std::uniform_int_distribution<int> any_interior(0, n - 1);
  for (int i = 0; i < b; ++i) {
    data.nodes.push_back({"b" + std::to_string(i + 1), true});
    data.edges.push_back({data.nodes[n + i].id, data.nodes[any_interior(rng)].id, weight()});
    --budget;
  }

  if (n > 1 && budget > 0) {
    std::uniform_int_distribution<int> extra_count(0, budget);
    int extras = extra_count(rng);
    for (int t = 0; t < extras; ++t) {
      int i = any_interior(rng), j = any_interior(rng);
      if (i == j) continue;
      auto key = std::minmax(i, j);
      if (!used.insert(key).second) continue;
      data.edges.push_back({data.nodes[key.first].id, data.nodes[key.second].id, weight()});
    }
  }
  return data;
}

inline inflap::NodeFunction random_function(std::mt19937& rng, const inflap::Graph& g,
                                            bool signed_values = true) {
  std::uniform_real_distribution<double> value(signed_values ? -1.0 : 0.05, 1.0);
  inflap::NodeFunction f = inflap::NodeFunction::zeros(g.interior_count());
  double peak = 0.0;
  for (int u = 0; u < f.size(); ++u) {
    f[u] = value(rng);
    peak = std::max(peak, std::abs(f[u]));
  }
  if (peak == 0.0) f[0] = 1.0;
  return f;
}

inline inflap::EdgeFunction random_edge_function(std::mt19937& rng, const inflap::Graph& g) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  inflap::EdgeFunction G(static_cast<int>(g.edges().size()), false);
  for (int e = 0; e < G.edge_count(); ++e) G.set(e, value(rng), value(rng));
  return G;
}

}  // namespace testsupport
