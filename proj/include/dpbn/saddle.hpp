#pragma once

#include <optional>
#include <utility>

#include "dpbn/activation.hpp"
#include "dpbn/linop.hpp"

namespace dpbn {

enum class InnerSolver { Auto, DirectCholesky, ConjugateGradient };

struct SaddleOptions {
  int max_iters = 100;
  double residual_tol = 1e-9;  // converged when ||gamma(h) - z||_inf <= this
  double fail_tol = 1e-6;      // failed when the final residual exceeds this
  double damping_init = 1.0;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;
  InnerSolver inner = InnerSolver::Auto;
  double cg_tol = 1e-12;
  int cg_max_iters = 0;  // 0: 10*M

  void validate() const;  // throws on residual_tol >= fail_tol etc.
};

struct SaddleResult {
  Eigen::VectorXd h;
  double residual_inf = 0.0;
  int iterations = 0;
  bool converged = false;
  bool failed = true;
};

// gamma(h) = W' lambda(W h): re-derives the feature from the latent.
// For the Exponential kind every coordinate of W h must be negative;
// a violation throws with the offending coordinate index.
Eigen::VectorXd gamma(const LinearMap& map, const ActivationKind& kind,
                      const Eigen::VectorXd& h);

// Damped Newton solve of gamma(h) = z. The Jacobian W' diag(lambda') W is
// symmetric positive definite, solved directly (Cholesky) for small M and
// by matrix-free conjugate gradient otherwise. Non-convergence and inner
// breakdowns are reported through the result, never thrown.
SaddleResult solve_saddle(const LinearMap& map, const ActivationKind& kind,
                          const Eigen::VectorXd& z, const SaddleOptions& opts = {},
                          const std::optional<Eigen::VectorXd>& warm_start = {});

// Conditional-mean reconstruction x_bar = lambda(W h) at the solved h.
// When converged, forward(x_bar) reproduces z to residual_tol and x_bar
// lies strictly inside the kind's data range.
std::pair<Eigen::VectorXd, SaddleResult> reconstruct_from_feature(
    const LinearMap& map, const ActivationKind& kind, const Eigen::VectorXd& z,
    const SaddleOptions& opts = {}, const std::optional<Eigen::VectorXd>& warm_start = {});

// Starting point for the Newton iteration: zero for every kind except
// Exponential, where W h must start strictly negative; there the least-
// squares solution of W h = -1 is used (empty if none qualifies).
std::optional<Eigen::VectorXd> saddle_initial_point(const LinearMap& map,
                                                    const ActivationKind& kind);

}  // namespace dpbn
