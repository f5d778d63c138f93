#include "inflap/operators.hpp"

#include <algorithm>
#include <cmath>

namespace inflap {

namespace detail {

void require_node_domain(const Graph& g, const NodeFunction& f, const char* op) {
  if (f.size() != g.interior_count())
    throw Error(Errc::domain_mismatch, std::string(op) + ": node function has " +
                                           std::to_string(f.size()) + " values, interior has " +
                                           std::to_string(g.interior_count()) + " nodes");
}

void require_edge_domain(const Graph& g, const EdgeFunction& G, const char* op) {
  if (G.edge_count() != static_cast<int>(g.edges().size()))
    throw Error(Errc::domain_mismatch, std::string(op) + ": edge function has " +
                                           std::to_string(G.edge_count()) + " edges, graph has " +
                                           std::to_string(g.edges().size()));
}

}  // namespace detail

EdgeFunction gradient(const Graph& g, const NodeFunction& f) {
  detail::require_node_domain(g, f, "gradient");
  EdgeFunction out(static_cast<int>(g.edges().size()), true);
  for (int e = 0; e < out.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    double fu = g.value_or_zero(f, edge.u);
    double fv = g.value_or_zero(f, edge.v);
    out.set_antisymmetric(e, edge.weight * (fv - fu));
  }
  return out;
}

NodeFunction divergence(const Graph& g, const EdgeFunction& G) {
  detail::require_edge_domain(g, G, "divergence");
  NodeFunction out = NodeFunction::zeros(g.interior_count());
  for (int e = 0; e < G.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    double asym = 0.5 * edge.weight * (G.forward(e) - G.backward(e));
    if (!g.is_boundary(edge.u)) out[edge.u] += asym;
    if (!g.is_boundary(edge.v)) out[edge.v] -= asym;
  }
  return out;
}

namespace {

double scaled_p_norm(std::span<const double> values, double p, double pair_factor) {
  if (p < 1.0) throw Error(Errc::invalid_exponent, "norm_p requires p >= 1");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  if (std::isinf(p)) return peak;
  double sum = 0.0;
  for (double v : values) {
    double r = std::abs(v) / peak;
    if (r > 0.0) sum += std::pow(r, p);
  }
  return peak * std::pow(pair_factor * sum, 1.0 / p);
}

}  // namespace

double norm_p(const NodeFunction& f, double p) { return scaled_p_norm(f.values(), p, 1.0); }

double norm_p(const EdgeFunction& G, double p) { return scaled_p_norm(G.values(), p, 0.5); }

double inner_product(const NodeFunction& f, const NodeFunction& h) {
  if (f.size() != h.size()) throw Error(Errc::domain_mismatch, "inner_product: node domains differ");
  double sum = 0.0;
  for (int i = 0; i < f.size(); ++i) sum += f[i] * h[i];
  return sum;
}

double inner_product(const EdgeFunction& G, const EdgeFunction& H) {
  if (G.edge_count() != H.edge_count())
    throw Error(Errc::domain_mismatch, "inner_product: edge domains differ");
  double sum = 0.0;
  for (int e = 0; e < G.edge_count(); ++e)
    sum += G.forward(e) * H.forward(e) + G.backward(e) * H.backward(e);
  return 0.5 * sum;
}

double local_gradient_norm(const Graph& g, const NodeFunction& f, int u) {
  double fu = g.value_or_zero(f, u);
  double best = 0.0;
  for (const auto& a : g.neighbors(u))
    best = std::max(best, a.weight * std::abs(g.value_or_zero(f, a.to) - fu));
  return best;
}

double steepest_descent(const Graph& g, const NodeFunction& f, int u) {
  double fu = g.value_or_zero(f, u);
  double best = 0.0;
  for (const auto& a : g.neighbors(u))
    best = std::max(best, a.weight * (fu - g.value_or_zero(f, a.to)));
  return best;
}

double steepest_ascent(const Graph& g, const NodeFunction& f, int u) {
  double fu = g.value_or_zero(f, u);
  double best = 0.0;
  for (const auto& a : g.neighbors(u))
    best = std::max(best, a.weight * (g.value_or_zero(f, a.to) - fu));
  return best;
}

EdgeFunction hadamard(const EdgeFunction& weight, const EdgeFunction& G) {
  if (weight.edge_count() != G.edge_count())
    throw Error(Errc::domain_mismatch, "hadamard: edge domains differ");
  EdgeFunction out(G.edge_count(), false);
  for (int e = 0; e < G.edge_count(); ++e)
    out.set(e, weight.forward(e) * G.forward(e), weight.backward(e) * G.backward(e));
  return out;
}

}  // namespace inflap
