#include "dpbn/activation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpbn {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)
constexpr double kSqrt2OverPi = 0.79788456080286535588; // sqrt(2/pi)

// exp(t^2) * erfc(t) without overflow for large positive t.
double erfcx_pos(double t) {
  if (t < 25.0) {
    return std::exp(t * t) * std::erfc(t);
  }
  // Asymptotic series; for t >= 25 the k=6 tail is below 1e-15.
  const double z = 0.5 / (t * t);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -z * double(2 * k - 1);
    sum += term;
  }
  return sum / (t * 1.7724538509055160273);  // sqrt(pi)
}

// Inverse Mills ratio phi(u)/Phi(u). Direct evaluation underflows in
// Phi near u = -8; switch to the scaled-erfc form below u = -5.
double inv_mills(double u) {
  if (u >= -5.0) {
    const double phi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
    const double Phi = 0.5 * std::erfc(-u / kSqrt2);
    return phi / Phi;
  }
  return kSqrt2OverPi / erfcx_pos(-u / kSqrt2);
}

void check_finite(double a) {
  if (!std::isfinite(a)) throw std::domain_error("activation: non-finite argument");
}

void check_exponential_domain(double a) {
  if (!(a < 0.0)) throw std::domain_error("activation: Exponential requires a < 0");
}

// |a| below this switches the TED closed form to its series; the closed
// form loses digits to cancellation as a -> 0.
constexpr double kTedSeriesCut = 1e-3;

double ted_lambda(double a) {
  if (std::abs(a) < kTedSeriesCut) {
    return 0.5 + a / 12.0 - a * a * a / 720.0;
  }
  // 1/(1 - e^{-a}) - 1/a, written with expm1 so both tails are stable.
  return -1.0 / std::expm1(-a) - 1.0 / a;
}

double ted_lambda_prime(double a) {
  if (std::abs(a) < kTedSeriesCut) {
    return 1.0 / 12.0 - a * a / 240.0;
  }
  const double s = 2.0 * std::sinh(0.5 * a);
  return 1.0 / (a * a) - 1.0 / (s * s);
}

double ted_lambda_second(double a) {
  if (std::abs(a) < 1e-2) {
    // Odd series: -a/120 + a^3/1512.
    return a * (-1.0 / 120.0 + a * a / 1512.0);
  }
  const double sh = std::sinh(0.5 * a);
  return 2.0 / (a * a * a) - std::cosh(0.5 * a) / (4.0 * sh * sh * sh);
}

}  // namespace

std::string to_string(DataRange r) {
  switch (r) {
    case DataRange::Reals: return "reals";
    case DataRange::Positives: return "positives";
    case DataRange::UnitInterval: return "unit";
  }
  return "?";
}

ActivationKind::ActivationKind(Tag tag, double sigma_sq) : tag_(tag), sigma_sq_(sigma_sq) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq))
    throw std::invalid_argument("ActivationKind: sigma_sq must be positive");
}

ActivationKind ActivationKind::linear(double s) { return {Tag::Linear, s}; }
ActivationKind ActivationKind::trunc_gauss(double s) { return {Tag::TruncGauss, s}; }
ActivationKind ActivationKind::exponential() { return {Tag::Exponential, 1.0}; }
ActivationKind ActivationKind::ted() { return {Tag::Ted, 1.0}; }

DataRange ActivationKind::range() const {
  switch (tag_) {
    case Tag::Linear: return DataRange::Reals;
    case Tag::TruncGauss:
    case Tag::Exponential: return DataRange::Positives;
    case Tag::Ted: return DataRange::UnitInterval;
  }
  return DataRange::Reals;
}

std::string ActivationKind::name() const {
  switch (tag_) {
    case Tag::Linear: return "linear";
    case Tag::TruncGauss: return "trunc_gauss";
    case Tag::Exponential: return "exponential";
    case Tag::Ted: return "ted";
  }
  return "?";
}

double lambda(const ActivationKind& kind, double a) {
  check_finite(a);
  switch (kind.tag()) {
    case ActivationKind::Tag::Linear:
      return kind.sigma_sq() * a;
    case ActivationKind::Tag::TruncGauss: {
      const double sigma = std::sqrt(kind.sigma_sq());
      const double u = sigma * a;
      return kind.sigma_sq() * a + sigma * inv_mills(u);
    }
    case ActivationKind::Tag::Exponential:
      check_exponential_domain(a);
      return -1.0 / a;
    case ActivationKind::Tag::Ted:
      return ted_lambda(a);
  }
  return 0.0;
}

double lambda_prime(const ActivationKind& kind, double a) {
  check_finite(a);
  switch (kind.tag()) {
    case ActivationKind::Tag::Linear:
      return kind.sigma_sq();
    case ActivationKind::Tag::TruncGauss: {
      const double sigma = std::sqrt(kind.sigma_sq());
      const double u = sigma * a;
      const double m = inv_mills(u);
      return kind.sigma_sq() * (1.0 - u * m - m * m);
    }
    case ActivationKind::Tag::Exponential:
      check_exponential_domain(a);
      return 1.0 / (a * a);
    case ActivationKind::Tag::Ted:
      return ted_lambda_prime(a);
  }
  return 0.0;
}

double lambda_second(const ActivationKind& kind, double a) {
  check_finite(a);
  switch (kind.tag()) {
    case ActivationKind::Tag::Linear:
      return 0.0;
    case ActivationKind::Tag::TruncGauss: {
      const double sigma = std::sqrt(kind.sigma_sq());
      const double u = sigma * a;
      const double m = inv_mills(u);
      return sigma * kind.sigma_sq() * m * (u * u + 3.0 * u * m + 2.0 * m * m - 1.0);
    }
    case ActivationKind::Tag::Exponential:
      check_exponential_domain(a);
      return -2.0 / (a * a * a);
    case ActivationKind::Tag::Ted:
      return ted_lambda_second(a);
  }
  return 0.0;
}

namespace {

// Safeguarded Newton on lambda(a) = y inside a verified bracket.
double invert_monotone(const ActivationKind& kind, double y, double lo, double hi) {
  const double tol = 1e-12 * std::max(1.0, std::abs(y));
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = lambda(kind, a) - y;
    if (std::abs(f) <= tol) return a;
    if (f > 0.0) hi = a; else lo = a;
    const double fp = lambda_prime(kind, a);
    double next = a - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == a) break;
    a = next;
  }
  return a;
}

}  // namespace

double lambda_inv(const ActivationKind& kind, double y) {
  check_finite(y);
  switch (kind.tag()) {
    case ActivationKind::Tag::Linear:
      return y / kind.sigma_sq();
    case ActivationKind::Tag::Exponential:
      if (!(y > 0.0)) throw std::domain_error("lambda_inv: y must be positive");
      return -1.0 / y;
    case ActivationKind::Tag::TruncGauss: {
      if (!(y > 0.0)) throw std::domain_error("lambda_inv: y must be positive");
      // lambda(a) > sigma^2 a, so a = y/sigma^2 is an upper bound.
      double hi = y / kind.sigma_sq();
      double lo = std::min(hi - 1.0, -2.0 / y);
      while (lambda(kind, lo) >= y) lo = 2.0 * lo - 1.0;
      return invert_monotone(kind, y, lo, hi);
    }
    case ActivationKind::Tag::Ted: {
      if (!(y > 0.0 && y < 1.0)) throw std::domain_error("lambda_inv: y must be in (0,1)");
      double lo = -1.0, hi = 1.0;
      while (lambda(kind, lo) >= y) lo *= 2.0;
      while (lambda(kind, hi) <= y) hi *= 2.0;
      return invert_monotone(kind, y, lo, hi);
    }
  }
  return 0.0;
}

RangeReport validate_range(DataRange range, const double* x, std::size_t n, double eps) {
  RangeReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    bool ok = std::isfinite(v);
    if (ok) {
      switch (range) {
        case DataRange::Reals: break;
        case DataRange::Positives: ok = v > eps; break;
        case DataRange::UnitInterval: ok = v > eps && v < 1.0 - eps; break;
      }
    }
    if (!ok) {
      rep.ok = false;
      rep.bad_indices.push_back(i);
    }
  }
  return rep;
}

}  // namespace dpbn
