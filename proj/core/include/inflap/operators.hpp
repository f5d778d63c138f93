#pragma once

#include "inflap/graph.hpp"

namespace inflap {

/// grad f(u,v) = w_uv (f(v) - f(u)), with f extended by zero on the boundary.
/// Output is antisymmetric and covers every edge, boundary-incident ones included.
EdgeFunction gradient(const Graph& g, const NodeFunction& f);

/// div G(u) = 1/2 sum_{v~u} w_uv (G(u,v) - G(v,u)), restricted to interior nodes.
/// For antisymmetric G this reduces to sum_{v~u} w_uv G(u,v).
NodeFunction divergence(const Graph& g, const EdgeFunction& G);

/// p-norms. Node: (sum |f(u)|^p)^(1/p). Edge: ((1/2) sum |G(u,v)|^p)^(1/p),
/// summing over both orientations. p = infinity gives the max norm.
/// Throws Errc::invalid_exponent for p < 1. Internally scaled by the max
/// entry, so large exponents neither overflow nor underflow.
double norm_p(const NodeFunction& f, double p);
double norm_p(const EdgeFunction& G, double p);

/// <f,h>_V = sum over interior nodes; <G,H>_E = 1/2 sum over directed edges.
double inner_product(const NodeFunction& f, const NodeFunction& h);
double inner_product(const EdgeFunction& G, const EdgeFunction& H);

/// Local gradient magnitudes at an interior node u:
///   local_gradient_norm = max_{v~u} |grad f(u,v)|           (||grad f(u)||_inf)
///   steepest_descent    = max_{v~u} w_uv (f(u) - f(v))^+    (||grad f^-(u)||_inf)
///   steepest_ascent     = max_{v~u} w_uv (f(v) - f(u))^+    (||grad f^+(u)||_inf)
double local_gradient_norm(const Graph& g, const NodeFunction& f, int u);
double steepest_descent(const Graph& g, const NodeFunction& f, int u);
double steepest_ascent(const Graph& g, const NodeFunction& f, int u);

/// Entrywise product of a symmetric edge weight with an edge function.
EdgeFunction hadamard(const EdgeFunction& weight, const EdgeFunction& G);

namespace detail {
void require_node_domain(const Graph& g, const NodeFunction& f, const char* op);
void require_edge_domain(const Graph& g, const EdgeFunction& G, const char* op);
}  // namespace detail

}  // namespace inflap
