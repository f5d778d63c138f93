#pragma once

#include "inflap/graph.hpp"

#include <optional>
#include <vector>

namespace inflap {

/// Delta_inf f(u) = ||grad f^-(u)||_inf - ||grad f^+(u)||_inf, the steepest
/// local descent magnitude minus the steepest ascent magnitude.
NodeFunction inf_laplacian(const Graph& g, const NodeFunction& f);

enum class Branch { positive, zero, negative };

/// Per-node verdicts for the three-branch limit eigenvalue system
///   min{ ||grad f(u)||_inf - Lambda f(u), Delta_inf f(u) } = 0   if f(u) > 0
///   Delta_inf f(u) = 0                                           if f(u) = 0
///   max{ -||grad f(u)||_inf - Lambda f(u), Delta_inf f(u) } = 0  if f(u) < 0.
/// gradient_term holds the first entry of the min/max for the signed branches
/// and the residual of the zero branch equals |inf_laplacian|. Residuals are
/// compared against tol.abs + tol.rel * S with S = 2 * w_max * ||f||_inf, an
/// a-priori bound on every term of the system. The zero branch claims nodes
/// with |f(u)| <= tol.abs.
struct LimitEquationReport {
  struct NodeVerdict {
    int node = 0;
    Branch branch = Branch::zero;
    double gradient_term = 0.0;
    double inf_laplacian = 0.0;
    double residual = 0.0;
    bool satisfied = false;
  };
  std::vector<NodeVerdict> nodes;
  bool overall = false;
  double residual = 0.0;  // max over nodes
  Tolerance tolerance;
};

LimitEquationReport check_limit_equation(const Graph& g, const NodeFunction& f, double lambda,
                                         Tolerance tol = {});

enum class RayleighConsistency { consistent, inconsistent, not_applicable };

/// Non-constant limit-equation solutions satisfy Lambda = ||grad f||_inf/||f||_inf.
/// Reports not_applicable when the limit equation fails (or f is the constant
/// trivial pair on a boundaryless graph).
RayleighConsistency rayleigh_consistency(const Graph& g, const NodeFunction& f, double lambda,
                                         Tolerance tol = {});

/// Subgradient pair witnessing a generalized infinity-eigenpair:
/// xi in the subdifferential of ||.||_inf at f, -div Xi in the one of
/// ||grad .||_inf, coupled by -div Xi = Lambda xi.
struct SubgradientCertificate {
  NodeFunction xi;
  EdgeFunction Xi;  // antisymmetric
  double lambda = 0.0;
  std::optional<std::vector<int>> path;  // monotone max-gradient path, when built from one
};

/// Verification of the seven-condition system; violations are raw magnitudes.
struct CertificateReport {
  double divergence_residual = 0.0;   // max |{-div Xi - Lambda xi}(u)|
  double edge_norm_error = 0.0;       // | ||Xi||_1,E - 1 |
  double node_norm_error = 0.0;       // | ||xi||_1,V - 1 |
  double xi_support_error = 0.0;      // max (||f||_inf - |f(u)|) over supp xi
  double Xi_support_error = 0.0;      // max (||grad f||_inf - |grad f(u,v)|) over supp Xi
  double xi_sign_error = 0.0;         // max |xi(u)| where sign(xi) != sign(f)
  double Xi_sign_error = 0.0;         // max |Xi(u,v)| where sign(Xi) != sign(grad f)
  bool ok = false;
};

CertificateReport verify_certificate(const Graph& g, const NodeFunction& f, double lambda,
                                     const SubgradientCertificate& cert, Tolerance tol = {});

/// Search result of find_generalized_certificate: either a verified
/// certificate, or the exhausted search frontier for diagnostics.
struct CertificateSearch {
  std::optional<SubgradientCertificate> certificate;
  CertificateReport verification;
  std::vector<int> frontier;  // nodes visited by the failed search
  long paths_explored = 0;
  bool found() const { return certificate.has_value(); }
};

/// Decides whether (f, Lambda) is a generalized infinity-eigenpair by looking
/// for a strictly monotone path along maximal-gradient edges from a maximal
/// node to the boundary (Lambda * length = 1) or to an opposite extremum
/// (Lambda * length = 2), and materializes the witnessing subgradient pair
///   Xi(u,v) = sign(grad f(u,v)) / (w_uv length),  xi = endpoint deltas.
/// Membership in V_max/E_max uses tol.rel relative to the respective norms.
CertificateSearch find_generalized_certificate(const Graph& g, const NodeFunction& f, double lambda,
                                               Tolerance tol = {});

/// Admissible densities turning the certificate system into the constrained
/// weighted Laplacian eigenvalue equation -div(tau . grad f) = Lambda mu f.
struct AdmissibleDensities {
  NodeFunction mu;   // nonnegative, supported on V_max(f)
  EdgeFunction tau;  // symmetric nonnegative, supported on E_max(f)
};

struct DensityReport {
  double divergence_residual = 0.0;  // max |{-div(tau . grad f) - Lambda mu f}(u)|
  double edge_norm_error = 0.0;      // | ||tau . grad f||_1,E - 1 |
  double node_norm_error = 0.0;      // | ||mu . f||_1,V - 1 |
  double tau_support_error = 0.0;
  double mu_support_error = 0.0;
  bool ok = false;
};

DensityReport verify_densities(const Graph& g, const NodeFunction& f, double lambda,
                               const AdmissibleDensities& densities, Tolerance tol = {});

/// mu = |xi| / ||f||_inf and tau = |Xi| / ||grad f||_inf, each rescaled so the
/// two normalizations hold exactly, then verified by direct substitution into
/// the weighted system (the normative check). Throws
/// Errc::unverified_certificate when either verification fails.
AdmissibleDensities densities_from_certificate(const Graph& g, const NodeFunction& f,
                                               const SubgradientCertificate& cert,
                                               Tolerance tol = {});

/// Limit-equation test restricted to { u interior : exists v, tau_uv > 0 };
/// a generalized eigenpair must satisfy the limit equation there.
struct SupportCheckReport {
  std::vector<int> support;
  LimitEquationReport limit;
  bool vacuous = false;  // empty support: vacuous pass, flagged
  bool ok = false;
};

SupportCheckReport support_subgraph_check(const Graph& g, const NodeFunction& f, double lambda,
                                          const AdmissibleDensities& densities, Tolerance tol = {});

/// Upper bounds 1/R_k on the Krasnoselskii infinity-variational eigenvalues,
/// exact for k = 1, 2.
struct VariationalBound {
  int k = 0;
  double bound = 0.0;
  bool exact = false;
};

std::vector<VariationalBound> infinity_variational_bounds(const Graph& g, int kmax);

/// V_max / E_max membership with tol.rel slack against the respective norm.
std::vector<int> maximal_nodes(const Graph& g, const NodeFunction& f, Tolerance tol = {});
std::vector<int> maximal_edges(const Graph& g, const NodeFunction& f, Tolerance tol = {});

}  // namespace inflap
