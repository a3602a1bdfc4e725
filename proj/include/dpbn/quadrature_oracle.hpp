#pragma once

#include <functional>

#include "dpbn/activation.hpp"

namespace dpbn {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
// Subdivides until the local error estimate is below
// max(abs_tol, rel_tol * |integral|).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-300);

struct PriorMoments {
  double mean;
  double variance;
};

// Mean and variance of the density proportional to exp(a*x + b*x^2) on
// the given range, computed by quadrature alone. This is the reference
// the closed-form activation code is checked against; it shares no code
// with lambda()/lambda_prime().
PriorMoments prior_moments(DataRange range, double a, double b,
                           double rel_tol = 1e-12);

// Moments of the prior behind an activation kind at natural parameter a
// (b = -1/(2 sigma^2) for the Gaussian-type kinds, 0 otherwise).
PriorMoments prior_moments(const ActivationKind& kind, double a,
                           double rel_tol = 1e-12);

}  // namespace dpbn
