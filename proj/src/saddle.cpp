#include "dpbn/saddle.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpbn {
namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::VectorXd lambda_vec(const ActivationKind& kind, const Eigen::VectorXd& a) {
  Eigen::VectorXd out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out(i) = lambda(kind, a(i));
  return out;
}

Eigen::VectorXd lambda_prime_vec(const ActivationKind& kind, const Eigen::VectorXd& a) {
  Eigen::VectorXd out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out(i) = lambda_prime(kind, a(i));
  return out;
}

bool exponential_domain_ok(const ActivationKind& kind, const Eigen::VectorXd& a) {
  if (kind.tag() != ActivationKind::Tag::Exponential) return true;
  return (a.array() < 0.0).all();
}

// J v = W' diag(d) W v without forming J.
Eigen::VectorXd apply_jacobian(const LinearMap& map, const Eigen::VectorXd& d,
                               const Eigen::VectorXd& v) {
  Eigen::VectorXd t = map.adjoint(v);
  t.array() *= d.array();
  return map.forward(t);
}

// Plain CG on the SPD system J x = b; returns false on breakdown.
bool solve_cg(const LinearMap& map, const Eigen::VectorXd& d, const Eigen::VectorXd& b,
              double tol, int max_iters, Eigen::VectorXd& x) {
  x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const double stop = tol * tol * b.squaredNorm();
  if (rs <= stop) return true;
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd jp = apply_jacobian(map, d, p);
    const double pjp = p.dot(jp);
    if (!(pjp > 0.0) || !std::isfinite(pjp)) return false;
    const double alpha = rs / pjp;
    x += alpha * p;
    r -= alpha * jp;
    const double rs_new = r.squaredNorm();
    if (!std::isfinite(rs_new)) return false;
    if (rs_new <= stop) return true;
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  return true;  // best effort; Newton backtracking judges the step
}

}  // namespace

void SaddleOptions::validate() const {
  if (max_iters < 1) throw std::invalid_argument("SaddleOptions: max_iters < 1");
  if (!(residual_tol > 0.0) || !(fail_tol > 0.0))
    throw std::invalid_argument("SaddleOptions: tolerances must be positive");
  if (!(residual_tol < fail_tol))
    throw std::invalid_argument("SaddleOptions: residual_tol must be < fail_tol");
  if (!(damping_init > 0.0) || !(backtrack_factor > 0.0) || !(backtrack_factor < 1.0))
    throw std::invalid_argument("SaddleOptions: bad damping parameters");
}

Eigen::VectorXd gamma(const LinearMap& map, const ActivationKind& kind,
                      const Eigen::VectorXd& h) {
  Eigen::VectorXd a = map.adjoint(h);
  if (kind.tag() == ActivationKind::Tag::Exponential) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!(a(i) < 0.0))
        throw std::domain_error("gamma: Exponential domain violated at coordinate " +
                                std::to_string(i));
  }
  return map.forward(lambda_vec(kind, a));
}

std::optional<Eigen::VectorXd> saddle_initial_point(const LinearMap& map,
                                                    const ActivationKind& kind) {
  if (kind.tag() != ActivationKind::Tag::Exponential)
    return Eigen::VectorXd::Zero(map.n_out());
  // Least-squares W h = -1 keeps all natural parameters negative when the
  // all-ones direction is close to the column space (true for the DCT map
  // and for nonnegative weight matrices).
  const Eigen::VectorXd target = -Eigen::VectorXd::Ones(map.n_in());
  Eigen::VectorXd h;
  if (map.is_dense()) {
    h = map.matrix().colPivHouseholderQr().solve(target);
  } else {
    h = map.forward(target);  // orthonormal rows: forward is the pseudoinverse
  }
  Eigen::VectorXd a = map.adjoint(h);
  if ((a.array() < 0.0).all()) return h;
  return std::nullopt;
}

SaddleResult solve_saddle(const LinearMap& map, const ActivationKind& kind,
                          const Eigen::VectorXd& z, const SaddleOptions& opts,
                          const std::optional<Eigen::VectorXd>& warm_start) {
  opts.validate();
  const int m = map.n_out();
  if (z.size() != m) throw std::invalid_argument("solve_saddle: feature length mismatch");

  SaddleResult res;
  res.h = Eigen::VectorXd::Zero(m);
  res.residual_inf = std::numeric_limits<double>::infinity();

  if (!all_finite(z)) return res;

  Eigen::VectorXd h;
  if (warm_start) {
    h = *warm_start;
  } else {
    auto h0 = saddle_initial_point(map, kind);
    if (!h0) return res;  // empty Exponential domain
    h = *h0;
  }

  Eigen::VectorXd a = map.adjoint(h);
  if (!exponential_domain_ok(kind, a)) return res;
  Eigen::VectorXd lam = lambda_vec(kind, a);
  Eigen::VectorXd r = z - map.forward(lam);
  if (!all_finite(r)) return res;
  double r_inf = r.lpNorm<Eigen::Infinity>();

  const bool use_cholesky = opts.inner == InnerSolver::DirectCholesky ||
                            (opts.inner == InnerSolver::Auto && map.is_dense() && m <= 512);
  const int cg_iters = opts.cg_max_iters > 0 ? opts.cg_max_iters : 10 * m;

  int iters = 0;
  while (r_inf > opts.residual_tol && iters < opts.max_iters) {
    const Eigen::VectorXd d = lambda_prime_vec(kind, a);
    if (!all_finite(d)) break;

    Eigen::VectorXd step(m);
    if (use_cholesky) {
      const Eigen::MatrixXd& w = map.matrix();
      const Eigen::MatrixXd jac = w.transpose() * d.asDiagonal() * w;
      Eigen::LLT<Eigen::MatrixXd> llt(jac);
      if (llt.info() != Eigen::Success) break;  // inner breakdown
      step = llt.solve(r);
    } else {
      if (!solve_cg(map, d, r, opts.cg_tol, cg_iters, step)) break;
    }
    if (!all_finite(step)) break;

    // Backtrack on the infinity norm; Exponential steps must also keep
    // every natural parameter strictly negative.
    double alpha = opts.damping_init;
    bool accepted = false;
    for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
      const Eigen::VectorXd h_try = h + alpha * step;
      const Eigen::VectorXd a_try = map.adjoint(h_try);
      if (exponential_domain_ok(kind, a_try)) {
        const Eigen::VectorXd lam_try = lambda_vec(kind, a_try);
        const Eigen::VectorXd r_try = z - map.forward(lam_try);
        if (all_finite(r_try)) {
          const double r_try_inf = r_try.lpNorm<Eigen::Infinity>();
          if (r_try_inf < r_inf) {
            h = h_try;
            a = a_try;
            lam = lam_try;
            r = r_try;
            r_inf = r_try_inf;
            accepted = true;
            break;
          }
        }
      }
      alpha *= opts.backtrack_factor;
    }
    ++iters;
    if (!accepted) break;  // stalled; report the best point reached
  }

  res.h = std::move(h);
  res.residual_inf = r_inf;
  res.iterations = iters;
  res.converged = r_inf <= opts.residual_tol;
  res.failed = !(r_inf <= opts.fail_tol);
  return res;
}

std::pair<Eigen::VectorXd, SaddleResult> reconstruct_from_feature(
    const LinearMap& map, const ActivationKind& kind, const Eigen::VectorXd& z,
    const SaddleOptions& opts, const std::optional<Eigen::VectorXd>& warm_start) {
  SaddleResult res = solve_saddle(map, kind, z, opts, warm_start);
  Eigen::VectorXd x_bar;
  if (res.h.size() == map.n_out() && all_finite(res.h)) {
    const Eigen::VectorXd a = map.adjoint(res.h);
    if (exponential_domain_ok(kind, a)) x_bar = lambda_vec(kind, a);
  }
  if (x_bar.size() == 0) {
    res.failed = true;
    res.converged = false;
    x_bar = Eigen::VectorXd::Constant(map.n_in(), std::numeric_limits<double>::quiet_NaN());
  }
  return {std::move(x_bar), std::move(res)};
}

}  // namespace dpbn
