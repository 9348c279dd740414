#include "mhscale/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "mhscale/errors.hpp"

namespace mhscale {

namespace {

// QUADPACK dqk15 nodes and weights (positive half).
constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kGK15Weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kG7Weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kGK15Nodes[i]);
    fv[14 - i] = f(c + h * kGK15Nodes[i]);
  }
  fv[7] = f(c);
  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 8; ++i) {
    k15 += kGK15Weights[i] * (i == 7 ? fv[7] : fv[i] + fv[14 - i]);
  }
  // Gauss points sit at the odd Kronrod indices 1,3,5 and the center.
  g7 = kG7Weights[3] * fv[7];
  for (int i = 0; i < 3; ++i) {
    g7 += kG7Weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  return {k15 * h, std::abs(k15 - g7) * h};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, int depth, int max_depth) {
  const PanelResult r = gk15(f, a, b);
  if (r.err <= tol || depth >= max_depth) return r.kronrod;
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * tol, depth + 1, max_depth) +
         adaptive(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg) {
  if (a == b) return 0.0;
  const PanelResult first = gk15(f, a, b);
  const double tol =
      std::max(cfg.abs_tol, cfg.rel_tol * std::abs(first.kronrod));
  if (first.err <= tol) return first.kronrod;
  return adaptive(f, a, b, tol, 0, cfg.max_depth);
}

double integrate_real_line(const std::function<double(double)>& f,
                           const QuadratureConfig& cfg) {
  double radius = cfg.initial_radius;
  double value = integrate(f, -radius, radius, cfg);
  while (radius <= cfg.max_radius) {
    const double shell = integrate(f, radius, 2.0 * radius, cfg) +
                         integrate(f, -2.0 * radius, -radius, cfg);
    const double next = value + shell;
    if (!std::isfinite(next)) {
      throw DivergentIntegralError("integrand is non-finite or overflows");
    }
    if (std::abs(shell) <=
        std::max(cfg.abs_tol, cfg.rel_tol * std::abs(next))) {
      return next;
    }
    value = next;
    radius *= 2.0;
  }
  throw DivergentIntegralError(
      "tail contribution did not stabilize below tolerance");
}

namespace {

// Gauss-Legendre nodes by Newton iteration on P_n; computed once.
struct GL32 {
  std::array<double, 32> x{}, w{};
  GL32() {
    const int n = 32;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p0 / pp;
        if (std::abs(z - z1) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[n - 1 - i] = w[i];
    }
  }
};

}  // namespace

double integrate_unit_interval_gl32(const std::function<double(double)>& f) {
  static const GL32 rule;
  double s = 0.0;
  for (int i = 0; i < 32; ++i) {
    s += rule.w[i] * f(0.5 * (rule.x[i] + 1.0));
  }
  return 0.5 * s;
}

}  // namespace mhscale
