#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpbn/activation.hpp"
#include "dpbn/quadrature_oracle.hpp"

using namespace dpbn;

namespace {

std::vector<ActivationKind> all_kinds() {
  return {ActivationKind::linear(), ActivationKind::trunc_gauss(),
          ActivationKind::exponential(), ActivationKind::ted()};
}

// The oracle grid: a in [-30, 30] except Exponential, which needs a < 0.
std::vector<double> grid_for(const ActivationKind& kind) {
  std::vector<double> g;
  if (kind.tag() == ActivationKind::Tag::Exponential) {
    for (double a = -30.0; a <= -1e-3; a += 0.37) g.push_back(a);
    g.push_back(-1e-3);
  } else {
    for (double a = -30.0; a <= 30.0; a += 0.61) g.push_back(a);
    g.push_back(0.0);
    g.push_back(30.0);
  }
  return g;
}

}  // namespace

TEST_CASE("quadrature rule sanity") {
  CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("lambda closed-form point values") {
  CHECK(lambda(ActivationKind::linear(), 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lambda(ActivationKind::exponential(), -2.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Doubled half-normal mean sqrt(2/pi) at a = 0.
  CHECK(lambda(ActivationKind::trunc_gauss(), 0.0) ==
        doctest::Approx(0.7978845608028654).epsilon(1e-12));
  // Mean of exp(x)-tilted uniform on (0,1): 1/(e-1).
  CHECK(lambda(ActivationKind::ted(), 1.0) ==
        doctest::Approx(0.5819767068693265).epsilon(1e-12));
  CHECK(lambda(ActivationKind::ted(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lambda(ActivationKind::ted(), 1e-9) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("lambda_prime closed-form point values") {
  CHECK(lambda_prime(ActivationKind::linear(2.0), 17.3) == doctest::Approx(2.0));
  CHECK(lambda_prime(ActivationKind::ted(), 0.0) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  CHECK(lambda_prime(ActivationKind::trunc_gauss(), 0.0) ==
        doctest::Approx(1.0 - 2.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(lambda(ActivationKind::exponential(), 0.0), std::domain_error);
  CHECK_THROWS_AS(lambda(ActivationKind::exponential(), 1.0), std::domain_error);
  CHECK_THROWS_AS(lambda(ActivationKind::ted(), std::nan("")), std::domain_error);
  CHECK_THROWS_AS(lambda_inv(ActivationKind::ted(), 0.0), std::domain_error);
  CHECK_THROWS_AS(lambda_inv(ActivationKind::ted(), 1.0), std::domain_error);
  CHECK_THROWS_AS(lambda_inv(ActivationKind::trunc_gauss(), -0.5), std::domain_error);
  CHECK_THROWS_AS(ActivationKind::linear(0.0), std::invalid_argument);
}

TEST_CASE("monotonicity on the grid") {
  for (const auto& kind : all_kinds()) {
    const auto grid = grid_for(kind);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i - 1] < grid[i])) continue;
      CHECK(lambda(kind, grid[i - 1]) < lambda(kind, grid[i]));
    }
  }
}

TEST_CASE("derivative matches central finite differences") {
  for (const auto& kind : all_kinds()) {
    for (double a : grid_for(kind)) {
      const double h = 1e-5 * std::max(1.0, std::abs(a));
      if (kind.tag() == ActivationKind::Tag::Exponential && a + h >= 0.0) continue;
      const double fd = (lambda(kind, a + h) - lambda(kind, a - h)) / (2.0 * h);
      const double lp = lambda_prime(kind, a);
      CHECK(std::abs(lp - fd) <= 1e-6 * std::max(1.0, std::abs(lp)));
    }
  }
}

TEST_CASE("lambda and lambda_prime match quadrature moments of the prior") {
  for (const auto& kind : all_kinds()) {
    for (double a : grid_for(kind)) {
      const PriorMoments m = prior_moments(kind, a);
      const double lam = lambda(kind, a);
      const double lp = lambda_prime(kind, a);
      CHECK(std::abs(lam - m.mean) <= 1e-6 * std::max(1e-12, std::abs(m.mean)));
      CHECK(std::abs(lp - m.variance) <= 1e-6 * std::max(1e-12, std::abs(m.variance)));
      CHECK(lp > 0.0);
    }
  }
}

TEST_CASE("lambda_second matches finite differences of lambda_prime") {
  for (const auto& kind : all_kinds()) {
    for (double a : grid_for(kind)) {
      const double h = 1e-5 * std::max(1.0, std::abs(a));
      if (kind.tag() == ActivationKind::Tag::Exponential && a + h >= 0.0) continue;
      const double fd = (lambda_prime(kind, a + h) - lambda_prime(kind, a - h)) / (2.0 * h);
      const double ls = lambda_second(kind, a);
      CHECK(std::abs(ls - fd) <= 2e-5 * std::max(1.0, std::abs(ls)));
    }
  }
}

TEST_CASE("range asymptotics") {
  const auto ted = ActivationKind::ted();
  CHECK(lambda(ted, 30.0) > 0.9);
  CHECK(lambda(ted, 1e9) < 1.0);
  CHECK(lambda(ted, 1e9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lambda(ted, -1e9) > 0.0);
  CHECK(lambda(ted, -1e9) == doctest::Approx(0.0).epsilon(1e-8));
  const auto tg = ActivationKind::trunc_gauss();
  CHECK(std::abs(lambda(tg, 30.0) - 30.0) <= 1e-6 * 30.0);
  CHECK(lambda(tg, -30.0) > 0.0);
  // TED stays strictly inside (0,1); TruncGauss strictly positive.
  for (double a : {-700.0, -30.0, 0.0, 30.0, 700.0}) {
    const double y = lambda(ted, a);
    CHECK(y > 0.0);
    CHECK(y < 1.0);
    CHECK(lambda(tg, a) > 0.0);
  }
}

TEST_CASE("inverse round-trips") {
  const auto kinds = all_kinds();
  for (const auto& kind : kinds) {
    for (double a : grid_for(kind)) {
      const double y = lambda(kind, a);
      const double back = lambda(kind, lambda_inv(kind, y));
      CHECK(std::abs(back - y) <= 1e-10 * std::max(1.0, std::abs(y)));
    }
  }
  CHECK(lambda_inv(ActivationKind::linear(), -4.0) == doctest::Approx(-4.0));
  CHECK(lambda_inv(ActivationKind::ted(), 0.5) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(lambda_inv(ActivationKind::ted(), 0.5819767068693265) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("validate_range") {
  const std::vector<double> reals = {-5.0, 0.0, 7.0};
  CHECK(validate_range(DataRange::Reals, reals).ok);

  const std::vector<double> unit = {0.5, 1.0};
  const auto rep = validate_range(DataRange::UnitInterval, unit);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.bad_indices.size() == 1);
  CHECK(rep.bad_indices[0] == 1);

  const std::vector<double> pos = {0.1, 1e-15};
  const auto rep2 = validate_range(DataRange::Positives, pos);
  CHECK_FALSE(rep2.ok);
  REQUIRE(rep2.bad_indices.size() == 1);
  CHECK(rep2.bad_indices[0] == 1);

  const std::vector<double> with_nan = {0.5, std::nan("")};
  CHECK_FALSE(validate_range(DataRange::UnitInterval, with_nan).ok);
}

TEST_CASE("kind/range mapping is fixed") {
  CHECK(ActivationKind::linear().range() == DataRange::Reals);
  CHECK(ActivationKind::trunc_gauss().range() == DataRange::Positives);
  CHECK(ActivationKind::exponential().range() == DataRange::Positives);
  CHECK(ActivationKind::ted().range() == DataRange::UnitInterval);
}
