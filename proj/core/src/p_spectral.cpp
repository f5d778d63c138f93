#include "inflap/p_spectral.hpp"

#include "inflap/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace inflap {

namespace {

void require_p_at_least_2(double p, const char* op) {
  if (!(p >= 2.0)) throw Error(Errc::invalid_exponent, std::string(op) + " requires p >= 2");
}

NodeFunction normalized_inf(const NodeFunction& f) {
  double peak = norm_p(f, kInf);
  if (peak == 0.0) throw Error(Errc::zero_function, "function is identically zero");
  NodeFunction out = f;
  for (int i = 0; i < out.size(); ++i) out[i] /= peak;
  return out;
}

// sign(x) |x|^(q); |x| <= 1 keeps this inside double range for any q.
double signed_power(double x, double q) {
  if (x == 0.0) return 0.0;
  double mag = std::pow(std::abs(x), q);
  return x > 0.0 ? mag : -mag;
}

}  // namespace

NodeFunction delta_p(const Graph& g, const NodeFunction& f, double p) {
  require_p_at_least_2(p, "delta_p");
  if (!std::isfinite(p)) throw Error(Errc::invalid_exponent, "delta_p requires finite p");
  detail::require_node_domain(g, f, "delta_p");
  NodeFunction out = NodeFunction::zeros(g.interior_count());
  for (int u = 0; u < g.interior_count(); ++u) {
    double fu = f[u];
    double sum = 0.0;
    for (const auto& a : g.neighbors(u)) {
      double d = fu - g.value_or_zero(f, a.to);
      // w^p |d|^(p-2) d  ==  w * |w d|^(p-2) * (w d)
      sum += a.weight * std::pow(std::abs(a.weight * d), p - 2.0) * (a.weight * d);
    }
    out[u] = sum;
  }
  return out;
}

double rayleigh_p(const Graph& g, const NodeFunction& f, double p) {
  require_p_at_least_2(p, "rayleigh_p");
  detail::require_node_domain(g, f, "rayleigh_p");
  double denom = norm_p(f, p);
  if (denom == 0.0) throw Error(Errc::zero_function, "rayleigh_p of the zero function");
  return norm_p(gradient(g, f), p) / denom;
}

double eigen_residual_p(const Graph& g, const NodeFunction& f, double lambda, double p) {
  require_p_at_least_2(p, "eigen_residual_p");
  detail::require_node_domain(g, f, "eigen_residual_p");
  NodeFunction fn = normalized_inf(f);
  NodeFunction lap = delta_p(g, fn, p);
  double worst = 0.0;
  for (int u = 0; u < g.interior_count(); ++u)
    worst = std::max(worst, std::abs(lap[u] - lambda * signed_power(fn[u], p - 1.0)));
  return worst;
}

NodeFunction eigen_equation_gradient(const Graph& g, const NodeFunction& f, double lambda, double p) {
  NodeFunction lap = delta_p(g, f, p);
  NodeFunction out = NodeFunction::zeros(g.interior_count());
  for (int u = 0; u < g.interior_count(); ++u)
    out[u] = p * (lap[u] - lambda * signed_power(f[u], p - 1.0));
  return out;
}

SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i][j]));
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= 1e-18 * scale) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
  SymmetricEigen out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (int idx : order) {
    out.values.push_back(a[idx][idx]);
    std::vector<double> column(n);
    for (int k = 0; k < n; ++k) column[k] = v[k][idx];
    out.vectors.push_back(std::move(column));
  }
  return out;
}

std::vector<std::vector<double>> interior_laplacian_matrix(const Graph& g) {
  const int n = g.interior_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    for (const auto& adj : g.neighbors(u)) {
      a[u][u] += adj.weight * adj.weight;
      if (!g.is_boundary(adj.to)) a[u][adj.to] -= adj.weight * adj.weight;
    }
  }
  return a;
}

namespace {

struct SolveState {
  std::vector<double> f;  // ||f||_p = 1
  double rayleigh = 0.0;
  std::vector<double> grad_r;    // gradient of R_p at f
  std::vector<double> grad_psi;  // gradient of the sign-balance functional
  double psi = 0.0;
};

void renormalize_p(std::vector<double>& f, double p) {
  double n = norm_p(NodeFunction(f), p);
  if (n == 0.0) throw Error(Errc::zero_init, "iterate collapsed to zero");
  for (double& x : f) x /= n;
}

// Evaluates R_p, psi, and their gradients at a p-normalized iterate. All
// p-powers act on ratios <= 1: the gradient of R_p at ||f||_p = 1 is
//   grad R(u) = -sum_{v~u} w phi(grad f(u,v)/R) - R phi(f(u)),
// phi(x) = sign(x)|x|^(p-1), which keeps every term within Sum(w) + R even
// for p in the hundreds.
SolveState evaluate(const Graph& g, std::vector<double> f, double p, bool with_psi) {
  SolveState st;
  st.f = std::move(f);
  NodeFunction fn(st.f);
  EdgeFunction grad = gradient(g, fn);
  double r = norm_p(grad, p);
  st.rayleigh = r;
  const int n = g.interior_count();
  st.grad_r.assign(n, 0.0);
  if (r > 0.0) {
    for (int u = 0; u < n; ++u) {
      double sum = 0.0;
      double fu = st.f[u];
      for (const auto& a : g.neighbors(u)) {
        double ghat = a.weight * (g.value_or_zero(fn, a.to) - fu) / r;
        sum += a.weight * signed_power(ghat, p - 1.0);
      }
      st.grad_r[u] = -sum - r * signed_power(fu, p - 1.0);
    }
  }
  if (with_psi) {
    std::vector<double> pos(n, 0.0), neg(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (st.f[i] > 0.0) pos[i] = st.f[i];
      if (st.f[i] < 0.0) neg[i] = -st.f[i];
    }
    double np = norm_p(NodeFunction(pos), p);
    double nn = norm_p(NodeFunction(neg), p);
    st.psi = np - nn;
    st.grad_psi.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (pos[i] > 0.0 && np > 0.0) st.grad_psi[i] = std::pow(pos[i] / np, p - 1.0);
      if (neg[i] > 0.0 && nn > 0.0) st.grad_psi[i] = std::pow(neg[i] / nn, p - 1.0);
    }
  }
  return st;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

// Per-node scaled residual of Delta_p f = lambda |f|^(p-2) f. Every term of a
// node's equation is an exponential w^p |d|^(p-1) or lambda_root^p |f|^(p-1);
// factoring out the node's largest log keeps the balance resolvable for any
// p, where the Rayleigh quotient itself is flat to machine precision in the
// sub-maximal coordinates once p is large.
struct ResidualEval {
  std::vector<double> values;
  double inf = 0.0;
  double sumsq = 0.0;
};

// Scaled residual of node u's equation with f(u) replaced by x.
double node_scaled_residual(const Graph& g, const std::vector<double>& f, int u, double x,
                            double lambda_root, double p) {
  const int n = g.interior_count();
  const double q = p - 1.0;
  thread_local std::vector<std::pair<double, double>> terms;  // ln magnitude, sign
  terms.clear();
  double ln_peak = -kInf;
  auto push = [&](double ln_mag, double sign) {
    terms.emplace_back(ln_mag, sign);
    ln_peak = std::max(ln_peak, ln_mag);
  };
  for (const auto& a : g.neighbors(u)) {
    double d = x - (a.to < n ? f[a.to] : 0.0);
    if (d == 0.0) continue;
    push(p * std::log(a.weight) + q * std::log(std::abs(d)), d > 0.0 ? 1.0 : -1.0);
  }
  if (x != 0.0 && lambda_root > 0.0)
    push(p * std::log(lambda_root) + q * std::log(std::abs(x)), x > 0.0 ? -1.0 : 1.0);
  if (terms.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [ln_mag, sign] : terms) sum += sign * std::exp(ln_mag - ln_peak);
  return sum;
}

ResidualEval scaled_eigen_residual(const Graph& g, const std::vector<double>& f,
                                   double lambda_root, double p) {
  const int n = g.interior_count();
  ResidualEval out;
  out.values.assign(n, 0.0);
  for (int u = 0; u < n; ++u) {
    double r = node_scaled_residual(g, f, u, f[u], lambda_root, p);
    out.values[u] = r;
    out.inf = std::max(out.inf, std::abs(r));
    out.sumsq += r * r;
  }
  return out;
}

// Nonlinear Gauss-Seidel stall recovery: solve each node's scalar equation
// in f(u) by bracketed bisection over a sign ladder. Bisection works across
// decades, which matters because the correct profile of an eigenfunction has
// node values the Rayleigh quotient cannot even see at large p, while the
// residual pins them sharply. Returns whether any node moved.
bool gauss_seidel_pass(const Graph& g, std::vector<double>& f, double lambda_root, double p) {
  const int n = g.interior_count();
  bool changed = false;
  for (int u = 0; u < n; ++u) {
    double x0 = f[u];
    double r0 = node_scaled_residual(g, f, u, x0, lambda_root, p);
    if (r0 == 0.0) continue;
    auto residual_at = [&](double x) { return node_scaled_residual(g, f, u, x, lambda_root, p); };

    // ladder of candidate values spanning signs and ~60 binary decades
    double span = 2.0;
    std::vector<double> ladder;
    for (double m = span; m > span * 0x1p-60; m *= 0.5) ladder.push_back(-m);
    ladder.push_back(0.0);
    for (double m = span * 0x1p-60; m <= span; m *= 2.0) ladder.push_back(m);

    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    double best_gap = kInf;
    double prev_x = ladder.front();
    double prev_r = residual_at(prev_x);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
      double x = ladder[i];
      double r = residual_at(x);
      if (prev_r == 0.0 || r == 0.0 || (prev_r < 0.0) != (r < 0.0)) {
        double gap = std::abs(0.5 * (prev_x + x) - x0);
        if (gap < best_gap) {
          best_gap = gap;
          lo = prev_x;
          hi = x;
          bracketed = true;
        }
      }
      prev_x = x;
      prev_r = r;
    }
    if (!bracketed) continue;

    double rlo = residual_at(lo);
    for (int iter = 0; iter < 100; ++iter) {
      double mid = 0.5 * (lo + hi);
      double rmid = residual_at(mid);
      if (rmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((rmid < 0.0) == (rlo < 0.0)) {
        lo = mid;
        rlo = rmid;
      } else {
        hi = mid;
      }
    }
    double x_star = 0.5 * (lo + hi);
    if (std::abs(residual_at(x_star)) < 0.9 * std::abs(r0)) {
      f[u] = x_star;
      changed = true;
    }
  }
  return changed;
}

// On the sphere ||f||_p = 1, psi is constant (+-1) wherever f has a single
// sign, so its tangential gradient vanishes there and a penalty method that
// wanders in cannot recover the sign balance.
bool single_signed(const std::vector<double>& f) {
  bool has_pos = false, has_neg = false;
  for (double x : f) {
    has_pos = has_pos || x > 0.0;
    has_neg = has_neg || x < 0.0;
  }
  return !(has_pos && has_neg);
}

// Removes the component normal to the sphere ||f||_p = 1 at f; the normal
// direction is phi(f) componentwise.
void project_tangent(std::vector<double>& d, const std::vector<double>& f, double p) {
  std::vector<double> nu(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) nu[i] = signed_power(f[i], p - 1.0);
  double nn = dot(nu, nu);
  if (nn == 0.0) return;
  double c = dot(d, nu) / nn;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c * nu[i];
}

// Stationarity measure: the norm of the tangential part of grad R (plus, when
// the penalty is active, the best multiple of grad psi), relative to R.
double stationarity(const SolveState& st, double p, bool with_psi) {
  std::vector<double> gr = st.grad_r;
  project_tangent(gr, st.f, p);
  if (with_psi) {
    std::vector<double> gp = st.grad_psi;
    project_tangent(gp, st.f, p);
    double denom = dot(gp, gp);
    if (denom > 0.0) {
      double s = -dot(gr, gp) / denom;
      for (std::size_t i = 0; i < gr.size(); ++i) gr[i] += s * gp[i];
    }
  }
  return st.rayleigh > 0.0 ? inf_norm(gr) / st.rayleigh : inf_norm(gr);
}

PSweepRecord make_record(double p, const std::vector<double>& f, double rayleigh,
                         double residual, int iterations, bool converged) {
  PSweepRecord rec;
  rec.p = p;
  rec.lambda_root = rayleigh;
  rec.lambda = std::pow(rayleigh, p);  // +inf past double range
  rec.residual = residual;
  rec.iterations = iterations;
  rec.converged = converged;
  rec.f = normalized_inf(NodeFunction(f));
  return rec;
}

std::pair<Eigenpair, PSweepRecord> solve_p2(const Graph& g, const NodeFunction& init) {
  auto eigen = jacobi_eigen(interior_laplacian_matrix(g));
  const int n = g.interior_count();
  double init_norm = 0.0;
  for (int u = 0; u < n; ++u) init_norm += init[u] * init[u];
  init_norm = std::sqrt(init_norm);
  int chosen = -1;
  double overlap = 0.0;
  for (int i = 0; i < n; ++i) {
    double c = 0.0;
    for (int u = 0; u < n; ++u) c += eigen.vectors[i][u] * init[u];
    if (std::abs(c) > 1e-12 * init_norm) {
      chosen = i;
      overlap = c;
      break;
    }
  }
  if (chosen < 0) throw Error(Errc::zero_init, "initializer has no overlap with any eigenvector");

  std::vector<double> f = eigen.vectors[chosen];
  if (overlap < 0.0)
    for (double& x : f) x = -x;
  double lambda = eigen.values[chosen];

  auto st = evaluate(g, f, 2.0, false);
  double residual = stationarity(st, 2.0, false);
  PSweepRecord rec = make_record(2.0, f, st.rayleigh, residual, 0, true);
  Eigenpair pair{rec.f, lambda};
  return {pair, rec};
}

}  // namespace

Eigenpair linear_eigenpair(const Graph& g, int k) {
  const int n = g.interior_count();
  if (k < 1 || k > n)
    throw Error(Errc::k_too_large, "linear_eigenpair index out of range");
  auto eigen = jacobi_eigen(interior_laplacian_matrix(g));
  NodeFunction f(eigen.vectors[k - 1]);
  return {normalized_inf(f), eigen.values[k - 1]};
}

namespace {

// Plain solver, two phases sharing the iteration budget and the scaled
// eigen-equation residual as the convergence measure.
//
// Phase 1 is Armijo descent on the Rayleigh quotient along -grad R_p: it is
// globally reliable but goes blind once p is large, because R_p is flat to
// machine precision in every sub-maximal coordinate.
//
// Phase 2 polishes with steps along the negative per-node scaled residual (a
// positive diagonal rescaling of -(Delta_p f - R_p^p |f|^(p-2) f)), accepted
// on residual decrease. The scaled residual distinguishes iterates at any p,
// but the polish is only locally reliable, which is exactly what phase 1 and
// the warm-started continuation provide.
std::pair<Eigenpair, PSweepRecord> solve_plain(const Graph& g, double p,
                                               const NodeFunction& init,
                                               const SolverOptions& opts) {
  std::vector<double> f(init.values().begin(), init.values().end());
  renormalize_p(f, p);
  auto rayleigh_of = [&](const std::vector<double>& h) {
    return norm_p(gradient(g, NodeFunction(h)), p);  // ||h||_p == 1
  };
  double rayleigh = rayleigh_of(f);
  ResidualEval resid = scaled_eigen_residual(g, f, rayleigh, p);

  int iterations = 0;
  bool converged = resid.inf <= opts.tol;

  // phase 1: Rayleigh descent (at most half the budget; phase 2 finishes)
  if (!converged) {
    const int phase1_budget = opts.max_iterations / 2;
    SolveState st = evaluate(g, f, p, false);
    double step = 1.0;
    for (; iterations < phase1_budget; ++iterations) {
      std::vector<double> direction(st.grad_r.size());
      for (std::size_t i = 0; i < direction.size(); ++i) direction[i] = -st.grad_r[i];
      project_tangent(direction, st.f, p);
      double dir_sq = dot(direction, direction);
      if (dir_sq == 0.0) break;

      bool accepted = false;
      double t = step;
      for (int backtrack = 0; backtrack < 60; ++backtrack) {
        std::vector<double> trial = st.f;
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += t * direction[i];
        double trial_norm = norm_p(NodeFunction(trial), p);
        if (trial_norm > 0.0) {
          for (double& x : trial) x /= trial_norm;
          SolveState next = evaluate(g, std::move(trial), p, false);
          double required = std::max(1e-4 * t * dir_sq, 1e-14 * st.rayleigh);
          if (next.rayleigh <= st.rayleigh - required) {
            st = std::move(next);
            accepted = true;
            break;
          }
        }
        t *= 0.5;
        if (t < 1e-18) break;
      }
      if (!accepted) break;
      step = std::min(t * 2.0, 1e6);

      resid = scaled_eigen_residual(g, st.f, st.rayleigh, p);
      if (resid.inf <= opts.tol) break;
    }
    f = st.f;
    rayleigh = st.rayleigh;
    resid = scaled_eigen_residual(g, f, rayleigh, p);
    converged = resid.inf <= opts.tol;
  }

  // phase 2: residual polish with Gauss-Seidel stall recovery
  if (!converged) {
    double step = 1.0;
    for (; iterations < opts.max_iterations; ++iterations) {
      if (resid.inf <= opts.tol) {
        converged = true;
        break;
      }
      bool accepted = false;
      double t = step;
      for (int backtrack = 0; backtrack < 80; ++backtrack) {
        std::vector<double> trial = f;
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= t * resid.values[i];
        double trial_norm = norm_p(NodeFunction(trial), p);
        if (trial_norm > 0.0) {
          for (double& x : trial) x /= trial_norm;
          double trial_rayleigh = rayleigh_of(trial);
          ResidualEval next = scaled_eigen_residual(g, trial, trial_rayleigh, p);
          // the decrease floor keeps micro-steps from being accepted forever
          double shrink = std::max(1e-4 * std::min(t, 1.0), 1e-9);
          if (next.sumsq <= resid.sumsq * (1.0 - shrink)) {
            f = std::move(trial);
            rayleigh = trial_rayleigh;
            resid = std::move(next);
            accepted = true;
            break;
          }
        }
        t *= 0.5;
        if (t < 1e-18) break;
      }
      if (accepted) {
        step = std::min(t * 2.0, 1.0);
        continue;
      }
      // gradient-style polish stalled: run a guarded Gauss-Seidel cascade,
      // re-estimating lambda between passes, and keep it only if the
      // residual actually improved
      std::vector<double> trial = f;
      double trial_rayleigh = rayleigh;
      bool cascaded = false;
      for (int pass = 0; pass < 60 && iterations < opts.max_iterations; ++pass, ++iterations) {
        if (!gauss_seidel_pass(g, trial, trial_rayleigh, p)) break;
        cascaded = true;
        double trial_norm = norm_p(NodeFunction(trial), p);
        if (trial_norm <= 0.0) break;
        for (double& x : trial) x /= trial_norm;
        trial_rayleigh = rayleigh_of(trial);
        if (scaled_eigen_residual(g, trial, trial_rayleigh, p).inf <= opts.tol) break;
      }
      if (!cascaded) break;
      ResidualEval next = scaled_eigen_residual(g, trial, trial_rayleigh, p);
      if (next.inf >= resid.inf * (1.0 - 1e-9) && next.sumsq >= resid.sumsq * (1.0 - 1e-9)) break;
      f = std::move(trial);
      rayleigh = trial_rayleigh;
      resid = std::move(next);
      step = 1.0;
    }
    converged = resid.inf <= opts.tol;
  }

  PSweepRecord rec = make_record(p, f, rayleigh, resid.inf, iterations, converged);
  Eigenpair pair{rec.f, rec.lambda};
  return {pair, rec};
}

// Penalized descent for the sign-balance constraint, on the merit
// R_p(f) + w |psi(f)|. Reported residual is the constrained stationarity
// measure, and convergence additionally requires |psi| <= constraint_tol.
std::pair<Eigenpair, PSweepRecord> solve_penalized(const Graph& g, double p,
                                                   const NodeFunction& init,
                                                   const SolverOptions& opts) {
  const bool with_psi = true;
  double weight = opts.sign_balance_weight;

  std::vector<double> f(init.values().begin(), init.values().end());
  renormalize_p(f, p);
  SolveState st = evaluate(g, f, p, with_psi);
  double step = 1.0;
  int iterations = 0;
  bool converged = false;
  double psi_checkpoint = std::abs(st.psi);

  for (; iterations < opts.max_iterations; ++iterations) {
    double residual = stationarity(st, p, with_psi);
    bool constraint_ok = !with_psi || std::abs(st.psi) <= opts.constraint_tol;
    if (residual <= opts.tol && constraint_ok) {
      converged = true;
      break;
    }

    if (with_psi && iterations > 0 && iterations % 40 == 0) {
      double cur = std::abs(st.psi);
      if (cur > opts.constraint_tol && cur > 0.5 * psi_checkpoint && weight < 1e6) weight *= 4.0;
      psi_checkpoint = cur;
    }

    // near the constraint, ride its tangent instead of letting sign(psi)
    // flip the penalty term every step (the classic exact-penalty zigzag,
    // which stalls steepest descent at the kink)
    std::vector<double> direction(st.grad_r.size());
    if (constraint_ok) {
      std::vector<double> gr = st.grad_r;
      project_tangent(gr, st.f, p);
      std::vector<double> gp = st.grad_psi;
      project_tangent(gp, st.f, p);
      double denom = dot(gp, gp);
      double s = denom > 0.0 ? -dot(gr, gp) / denom : 0.0;
      for (std::size_t i = 0; i < direction.size(); ++i) direction[i] = -(gr[i] + s * gp[i]);
    } else {
      double psi_sign = st.psi > 0.0 ? 1.0 : (st.psi < 0.0 ? -1.0 : 0.0);
      for (std::size_t i = 0; i < direction.size(); ++i)
        direction[i] = -(st.grad_r[i] + weight * psi_sign * st.grad_psi[i]);
      project_tangent(direction, st.f, p);
    }
    double dir_sq = dot(direction, direction);
    if (dir_sq == 0.0) {
      converged = residual <= opts.tol && constraint_ok;
      break;
    }

    double objective = st.rayleigh + (with_psi ? weight * std::abs(st.psi) : 0.0);
    bool keep_mixed = with_psi && !single_signed(st.f);
    bool accepted = false;
    double t = step;
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      std::vector<double> trial = st.f;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += t * direction[i];
      double trial_norm = norm_p(NodeFunction(trial), p);
      if (trial_norm > 0.0 && !(keep_mixed && single_signed(trial))) {
        for (double& x : trial) x /= trial_norm;
        SolveState next = evaluate(g, std::move(trial), p, with_psi);
        double next_objective = next.rayleigh + (with_psi ? weight * std::abs(next.psi) : 0.0);
        // require decrease distinguishable from rounding noise, so the
        // search fails fast once the iterate is at the precision floor
        double required = std::max(1e-4 * t * dir_sq, 4e-16 * std::abs(objective));
        if (next_objective <= objective - required) {
          st = std::move(next);
          accepted = true;
          break;
        }
      }
      t *= 0.5;
      if (t < 1e-18) break;
    }
    if (!accepted) {
      // A stalled penalized iterate with an unmet constraint means the
      // weight is too small; escalate and retry rather than giving up.
      if (with_psi && std::abs(st.psi) > opts.constraint_tol && weight < 1e6) {
        weight *= 4.0;
        step = 1.0;
        continue;
      }
      converged = stationarity(st, p, with_psi) <= opts.tol &&
                  (!with_psi || std::abs(st.psi) <= opts.constraint_tol);
      break;
    }
    step = std::min(t * 2.0, 1e6);
  }

  double residual = stationarity(st, p, with_psi);
  PSweepRecord rec = make_record(p, st.f, st.rayleigh, residual, iterations, converged);
  Eigenpair pair{rec.f, rec.lambda};
  return {pair, rec};
}

}  // namespace

std::pair<Eigenpair, PSweepRecord> minimize_rayleigh(const Graph& g, double p,
                                                     const NodeFunction& init,
                                                     const SolverOptions& opts) {
  if (!(p >= 2.0 && p <= 512.0))
    throw Error(Errc::invalid_exponent, "minimize_rayleigh requires p in [2, 512]");
  detail::require_node_domain(g, init, "minimize_rayleigh");
  if (init.is_zero()) throw Error(Errc::zero_init, "initializer is identically zero");

  if (opts.sign_balance_weight > 0.0) return solve_penalized(g, p, init, opts);
  if (p == 2.0) return solve_p2(g, init);
  return solve_plain(g, p, init, opts);
}

std::vector<double> doubling_schedule(double pmax) {
  std::vector<double> schedule;
  for (double p = 2.0; p <= pmax; p *= 2.0) schedule.push_back(p);
  return schedule;
}

std::vector<PSweepRecord> p_sweep(const Graph& g, const std::vector<double>& schedule,
                                  SweepMode mode, const SolverOptions& opts) {
  if (schedule.empty() || schedule.front() != 2.0)
    throw Error(Errc::invalid_argument, "p_sweep schedule must start at p = 2");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw Error(Errc::invalid_argument, "p_sweep schedule must be strictly increasing");
  if (mode == SweepMode::first && !g.has_boundary())
    throw Error(Errc::invalid_argument,
                "p_sweep mode=first starts from the boundary distance and needs a boundary");
  if (mode == SweepMode::second && g.interior_count() < 2)
    throw Error(Errc::invalid_argument, "p_sweep mode=second needs at least two interior nodes");

  std::vector<PSweepRecord> records;
  NodeFunction warm;
  std::mt19937 rng(opts.seed);

  for (double p : schedule) {
    std::pair<Eigenpair, PSweepRecord> solved;
    if (records.empty()) {
      if (mode == SweepMode::first) {
        solved = minimize_rayleigh(g, p, g.boundary_distance_function(), opts);
      } else {
        auto second = linear_eigenpair(g, 2);
        if (p == 2.0) {
          std::vector<double> f2(second.f.values().begin(), second.f.values().end());
          renormalize_p(f2, 2.0);
          auto st = evaluate(g, std::move(f2), 2.0, false);
          PSweepRecord rec = make_record(2.0, st.f, st.rayleigh,
                                         stationarity(st, 2.0, false), 0, true);
          solved = {Eigenpair{rec.f, second.lambda}, rec};
        } else {
          SolverOptions o = opts;
          o.sign_balance_weight = std::max(opts.sign_balance_weight, 1.0);
          solved = minimize_rayleigh(g, p, second.f, o);
        }
      }
    } else {
      NodeFunction init = warm;
      if (opts.seed != 0) {
        std::uniform_real_distribution<double> jitter(-1e-8, 1e-8);
        for (int i = 0; i < init.size(); ++i) init[i] *= 1.0 + jitter(rng);
      }
      SolverOptions o = opts;
      if (mode == SweepMode::second) o.sign_balance_weight = std::max(opts.sign_balance_weight, 1.0);
      solved = minimize_rayleigh(g, p, init, o);
    }
    records.push_back(solved.second);
    if (!records.back().converged) break;
    warm = records.back().f;
  }
  return records;
}

}  // namespace inflap
