#pragma once

#include <functional>

namespace mhscale {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;            // bisection depth per panel
  double initial_radius = 8.0;   // starting half-width for whole-line integrals
  double max_radius = 1e9;       // doubling past this signals divergence
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Integral over the whole real line by doubling [-R, R] until both the value
// stabilizes and the newly added shell contributes below tolerance.
// Throws DivergentIntegralError when no stable value is reached.
double integrate_real_line(const std::function<double(double)>& f,
                           const QuadratureConfig& cfg = {});

// Fixed-order Gauss-Legendre rule on [0,1]; enough for the smooth unit-interval
// integrals in the remainder checks.
double integrate_unit_interval_gl32(const std::function<double(double)>& f);

}  // namespace mhscale
