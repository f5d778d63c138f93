#include "inflap/nodal.hpp"

#include "inflap/operators.hpp"
#include "inflap/packing.hpp"

#include <algorithm>
#include <cmath>

namespace inflap {

namespace {

int sign_class(double x, double zero_tol) {
  if (std::abs(x) <= zero_tol) return 0;
  return x > 0.0 ? 1 : -1;
}

}  // namespace

std::pair<int, std::vector<NodalDomain>> nodal_domains(const Graph& g, const NodeFunction& f,
                                                       double zero_tol) {
  detail::require_node_domain(g, f, "nodal_domains");
  if (f.is_zero(zero_tol)) throw Error(Errc::zero_function, "nodal_domains of the zero function");

  const int n = g.interior_count();
  std::vector<int> signs(n);
  for (int u = 0; u < n; ++u) signs[u] = sign_class(f[u], zero_tol);

  std::vector<char> seen(n, 0);
  std::vector<NodalDomain> domains;
  for (int u = 0; u < n; ++u) {
    if (seen[u] || signs[u] == 0) continue;
    NodalDomain domain;
    domain.sign = signs[u];
    std::vector<int> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      domain.nodes.push_back(cur);
      for (const auto& a : g.neighbors(cur)) {
        if (g.is_boundary(a.to) || seen[a.to] || signs[a.to] != domain.sign) continue;
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
    }
    std::sort(domain.nodes.begin(), domain.nodes.end());
    domains.push_back(std::move(domain));
  }
  return {static_cast<int>(domains.size()), domains};
}

NodalDecomposition split_at_zeros(const Graph& g, const NodeFunction& f, double zero_tol) {
  detail::require_node_domain(g, f, "split_at_zeros");
  if (f.is_zero(zero_tol)) throw Error(Errc::zero_function, "split_at_zeros of the zero function");

  NodalDecomposition out;
  out.domains = nodal_domains(g, f, zero_tol).second;

  GraphData data;
  for (int u = 0; u < g.node_count(); ++u) {
    bool boundary = g.is_boundary(u) || sign_class(g.value_or_zero(f, u), zero_tol) == 0;
    data.nodes.push_back({g.id(u), boundary});
  }

  for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
    const auto& edge = g.edges()[e];
    int su = g.is_boundary(edge.u) ? 0 : sign_class(f[edge.u], zero_tol);
    int sv = g.is_boundary(edge.v) ? 0 : sign_class(f[edge.v], zero_tol);
    if (su * sv >= 0) {
      data.edges.push_back({g.id(edge.u), g.id(edge.v), edge.weight});
      out.edge_map.push_back({e, ""});
      continue;
    }
    const std::string& a = std::min(g.id(edge.u), g.id(edge.v));
    const std::string& b = std::max(g.id(edge.u), g.id(edge.v));
    std::string w_id = "z:" + a + ":" + b;
    data.nodes.push_back({w_id, true});
    double fu = f[edge.u], fv = f[edge.v];
    data.edges.push_back({g.id(edge.u), w_id, edge.weight * (1.0 - fv / fu)});
    data.edges.push_back({w_id, g.id(edge.v), edge.weight * (1.0 - fu / fv)});
    out.edge_map.push_back({e, w_id});
  }

  out.split_graph = assemble_graph(data, false);
  return out;
}

std::pair<Graph, NodeFunction> extract_component(const Graph& g, const NodeFunction& f,
                                                 const NodalDecomposition& decomposition,
                                                 int domain_index) {
  if (domain_index < 0 || domain_index >= static_cast<int>(decomposition.domains.size()))
    throw Error(Errc::invalid_argument, "domain index out of range");
  const auto& domain = decomposition.domains[domain_index];
  const Graph& split = decomposition.split_graph;

  std::vector<char> keep_interior(split.node_count(), 0);
  for (int u : domain.nodes) keep_interior[split.index(g.id(u))] = 1;

  GraphData data;
  std::vector<char> included(split.node_count(), 0);
  for (int u = 0; u < split.node_count(); ++u) {
    if (keep_interior[u]) {
      data.nodes.push_back({split.id(u), false});
      included[u] = 1;
    }
  }
  for (const auto& edge : split.edges()) {
    bool u_in = keep_interior[edge.u], v_in = keep_interior[edge.v];
    if (!u_in && !v_in) continue;
    for (int endpoint : {edge.u, edge.v}) {
      if (!keep_interior[endpoint] && !included[endpoint]) {
        data.nodes.push_back({split.id(endpoint), true});
        included[endpoint] = 1;
      }
    }
    data.edges.push_back({split.id(edge.u), split.id(edge.v), edge.weight});
  }

  Graph component = assemble_graph(data, true);
  NodeFunction restricted = NodeFunction::zeros(component.interior_count());
  for (int u = 0; u < component.interior_count(); ++u)
    restricted[u] = f[g.index(component.id(u))];
  return {std::move(component), std::move(restricted)};
}

NodalBoundsReport nodal_bounds_check(const Graph& g, const NodeFunction& f, double lambda,
                                     Tolerance tol) {
  auto limit = check_limit_equation(g, f, lambda, tol);
  if (!limit.overall)
    throw Error(Errc::precondition_failed,
                "nodal_bounds_check requires a pair satisfying the limit equation");
  NodalBoundsReport report;
  report.lambda = lambda;
  report.domain_count = nodal_domains(g, f, tol.abs).first;
  auto packing = packing_radius(g, report.domain_count);
  report.lower_bound = std::isinf(packing.radius) ? 0.0 : 1.0 / packing.radius;
  report.ok = report.lower_bound <= lambda + tol.at_scale(std::max(lambda, 1.0));
  return report;
}

}  // namespace inflap
