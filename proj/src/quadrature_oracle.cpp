#include "dpbn/quadrature_oracle.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dpbn {
namespace {

// Kronrod-15 abscissae on [-1, 1] (positive half) and weights; the
// embedded Gauss-7 rule provides the error estimate. QUADPACK dqk15.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, integral, error;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double fl = f(c - h * kXgk[i]);
    const double fr = f(c + h * kXgk[i]);
    resk += kWgk[i] * (fl + fr);
    if (i % 2 == 1) resg += kWg[i / 2] * (fl + fr);  // odd indices are Gauss nodes
  }
  const double f0 = f(c);
  resk += kWgk[7] * f0;
  resg += kWg[3] * f0;
  return {a, b, resk * h, std::abs(resk - resg) * h};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
  if (!(b > a)) return 0.0;
  // Work queue of segments, refining the worst one first.
  std::vector<Segment> segs;
  segs.push_back(gk15(f, a, b));
  for (int iter = 0; iter < 2000; ++iter) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].integral;
      err += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = gk15(f, s.a, mid);
    segs.push_back(gk15(f, mid, s.b));
  }
  double total = 0.0;
  for (const auto& s : segs) total += s.integral;
  return total;
}

namespace {

struct Domain {
  double lo, hi, g_max;
};

// Integration window: the region where a*x + b*x^2 is within 60 of its
// maximum over the range (exp(-60) ~ 9e-27 relative mass outside).
Domain window(DataRange range, double a, double b) {
  constexpr double kDrop = 60.0;
  if (b < 0.0) {
    const double x_star = -a / (2.0 * b);     // vertex of the concave exponent
    const double half = std::sqrt(kDrop / -b);  // g drops kDrop at x_star +- half
    double lo = x_star - half, hi = x_star + half;
    if (range != DataRange::Reals) lo = std::max(lo, 0.0);
    if (range == DataRange::UnitInterval) hi = std::min(hi, 1.0);
    double g_max;
    if (x_star >= lo && x_star <= hi) g_max = a * x_star + b * x_star * x_star;
    else {
      const double gl = a * lo + b * lo * lo, gh = a * hi + b * hi * hi;
      g_max = std::max(gl, gh);
    }
    return {lo, hi, g_max};
  }
  // b == 0: pure exponential tilt.
  if (range == DataRange::UnitInterval) return {0.0, 1.0, std::max(0.0, a)};
  if (range == DataRange::Positives) {
    if (!(a < 0.0)) throw std::domain_error("prior_moments: non-normalizable density");
    return {0.0, kDrop / -a, 0.0};
  }
  throw std::domain_error("prior_moments: non-normalizable density on the reals");
}

}  // namespace

PriorMoments prior_moments(DataRange range, double a, double b, double rel_tol) {
  const Domain d = window(range, a, b);
  const auto w = [&](double x) { return std::exp(a * x + b * x * x - d.g_max); };
  const double z = integrate_adaptive(w, d.lo, d.hi, rel_tol);
  const double m1 = integrate_adaptive([&](double x) { return x * w(x); }, d.lo, d.hi, rel_tol);
  const double mean = m1 / z;
  const double v = integrate_adaptive(
      [&](double x) { return (x - mean) * (x - mean) * w(x); }, d.lo, d.hi, rel_tol);
  return {mean, v / z};
}

PriorMoments prior_moments(const ActivationKind& kind, double a, double rel_tol) {
  const bool gaussian_type = kind.tag() == ActivationKind::Tag::Linear ||
                             kind.tag() == ActivationKind::Tag::TruncGauss;
  const double b = gaussian_type ? -0.5 / kind.sigma_sq() : 0.0;
  return prior_moments(kind.range(), a, b, rel_tol);
}

}  // namespace dpbn
