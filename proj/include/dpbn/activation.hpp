#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dpbn {

// Per-coordinate support of the data: the real line, the open positive
// half-line, or the open unit interval.
enum class DataRange { Reals, Positives, UnitInterval };

std::string to_string(DataRange r);

// A maximum-entropy prior/activation pair. Each variant is the mean
// function lambda(a) of an exponential-class density exp(a*x + b*x^2)
// restricted to its data range, with b fixed per variant:
//   Linear      - Gaussian on R,            b = -1/(2 sigma^2), lambda(a) = sigma^2 a
//   TruncGauss  - doubled Gaussian on (0,oo), b = -1/(2 sigma^2)  (softplus-like)
//   Exponential - exp(a x) on (0,oo), b = 0, needs a < 0, lambda(a) = -1/a
//   Ted         - exp(a x) on (0,1),  b = 0  (sigmoid-like)
class ActivationKind {
 public:
  enum class Tag { Linear, TruncGauss, Exponential, Ted };

  static ActivationKind linear(double sigma_sq = 1.0);
  static ActivationKind trunc_gauss(double sigma_sq = 1.0);
  static ActivationKind exponential();
  static ActivationKind ted();

  Tag tag() const { return tag_; }
  double sigma_sq() const { return sigma_sq_; }
  DataRange range() const;
  std::string name() const;

  bool operator==(const ActivationKind& o) const {
    return tag_ == o.tag_ && sigma_sq_ == o.sigma_sq_;
  }

 private:
  ActivationKind(Tag tag, double sigma_sq);
  Tag tag_;
  double sigma_sq_;
};

// Mean of the prior as a function of the natural parameter a.
// Strictly increasing; maps into the interior of the variant's range.
// Throws std::domain_error on non-finite a or Exponential with a >= 0.
double lambda(const ActivationKind& kind, double a);

// d lambda / da; equals the variance of the prior, hence strictly positive.
double lambda_prime(const ActivationKind& kind, double a);

// d^2 lambda / da^2 (third central moment of the prior); used when
// differentiating through Newton updates.
double lambda_second(const ActivationKind& kind, double a);

// Solves lambda(kind, a) = y for a. y must lie strictly inside the
// variant's range; |lambda(a) - y| <= 1e-12 * max(1, |y|) on return.
double lambda_inv(const ActivationKind& kind, double y);

struct RangeReport {
  bool ok = true;
  std::vector<std::size_t> bad_indices;
};

inline constexpr double kRangeEpsilon = 1e-12;

// Per-coordinate membership in the open range; boundary values (and
// anything within kRangeEpsilon of it) are rejected.
RangeReport validate_range(DataRange range, const double* x, std::size_t n,
                           double eps = kRangeEpsilon);

template <typename Vec>
RangeReport validate_range(DataRange range, const Vec& x, double eps = kRangeEpsilon) {
  return validate_range(range, x.data(), static_cast<std::size_t>(x.size()), eps);
}

}  // namespace dpbn
