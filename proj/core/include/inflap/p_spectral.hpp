#pragma once

#include "inflap/graph.hpp"

#include <utility>
#include <vector>

namespace inflap {

struct Eigenpair {
  NodeFunction f;
  double lambda = 0.0;  // R_p(f)^p for finite-p pairs, Lambda for infinity pairs
};

struct PSweepRecord {
  double p = 0.0;
  double lambda = 0.0;       // lambda_root^p; +inf when it exceeds double range
  double lambda_root = 0.0;  // lambda^(1/p) = R_p(f) at the final iterate
  double residual = 0.0;     // relative stationarity residual of the iterate
  int iterations = 0;
  bool converged = false;
  NodeFunction f;  // renormalized to ||f||_inf = 1
};

struct SolverOptions {
  // Stationarity tolerance, relative to R_p(f). An objective-comparison line
  // search cannot certify progress once the iterate is within sqrt(eps) of
  // the minimizer, which floors the reachable residual near 1e-8; the
  // default stays safely above that.
  double tol = 1e-6;
  int max_iterations = 50000;
  /// > 0 enables the exact penalty on psi(f) = ||f+||_p - ||f-||_p; the weight
  /// starts here and is multiplied by 4 whenever |psi| stagnates.
  double sign_balance_weight = 0.0;
  double constraint_tol = 1e-6;
  unsigned seed = 0;  // seeds the warm-start jitter in p_sweep; 0 = none
};

/// Discrete p-Laplacian: Delta_p f(u) = sum_{v~u} w^p |f(u)-f(v)|^(p-2) (f(u)-f(v)),
/// with f extended by zero on the boundary. Requires finite p >= 2.
NodeFunction delta_p(const Graph& g, const NodeFunction& f, double p);

/// R_p(f) = ||grad f||_p / ||f||_p for p in [2, inf]. Scale invariant.
double rayleigh_p(const Graph& g, const NodeFunction& f, double p);

/// max_u |Delta_p f(u) - lambda |f(u)|^(p-2) f(u)| after renormalizing
/// ||f||_inf = 1; zero exactly when (f, lambda) is a p-eigenpair.
double eigen_residual_p(const Graph& g, const NodeFunction& f, double lambda, double p);

/// Gradient of f -> ||grad f||_p^p - lambda ||f||_p^p, which equals
/// p (Delta_p f - lambda |f|^(p-2) f). The solver's descent direction is the
/// negative of this up to a positive factor.
NodeFunction eigen_equation_gradient(const Graph& g, const NodeFunction& f, double lambda, double p);

/// Dense symmetric eigendecomposition by cyclic Jacobi rotations,
/// eigenvalues ascending. Fast path and oracle for the p = 2 case.
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};
SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a);

/// Interior matrix of Delta_2: A(u,u) = sum_{v~u} w^2, A(u,v) = -w^2 for
/// interior neighbors v.
std::vector<std::vector<double>> interior_laplacian_matrix(const Graph& g);

/// k-th linear (p = 2) eigenpair, k >= 1 ascending, from the Jacobi solver.
Eigenpair linear_eigenpair(const Graph& g, int k);

/// Projected subgradient descent on R_p with ||f||_p = 1 renormalization and
/// Armijo backtracking; descent direction -(Delta_p f - R_p(f)^p |f|^(p-2) f)
/// evaluated in a log-scaled form so that exponents up to p = 512 stay inside
/// double range. p = 2 dispatches to the Jacobi solver, selecting the
/// smallest eigenvalue with nonzero overlap against init. The solver is
/// local: it returns *an* eigenpair; lambda_1 is guaranteed only from
/// positive initializers. Non-convergence returns the best iterate with
/// converged = false rather than throwing.
std::pair<Eigenpair, PSweepRecord> minimize_rayleigh(const Graph& g, double p,
                                                     const NodeFunction& init,
                                                     const SolverOptions& opts = {});

enum class SweepMode { first, second };

/// Warm-started continuation over a strictly increasing schedule starting at
/// p = 2. Mode first starts from the boundary distance function; mode second
/// starts from the p = 2 second eigenfunction and keeps the sign balance
/// ||f+||_p = ||f-||_p by exact penalty. A non-converged entry truncates the
/// sweep, returning the partial record list.
std::vector<PSweepRecord> p_sweep(const Graph& g, const std::vector<double>& schedule,
                                  SweepMode mode, const SolverOptions& opts = {});

/// Default schedule 2, 4, 8, ..., capped at pmax.
std::vector<double> doubling_schedule(double pmax);

}  // namespace inflap
