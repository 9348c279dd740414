#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhscale/quadrature.hpp"
#include "mhscale/rng.hpp"

namespace mhscale {

// One-dimensional target potential phi with derivative, normalization and the
// regularity constants (k, gamma, alpha) of the local-Hoelder/growth
// condition |phi'(x+v) - phi'(x)| <= k max(|v|^gamma, |v|^alpha).
// Immutable after construction; safe to share across chain replicas.
struct Potential {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> phi_prime;
  // phi(x+v) - phi(x); closed-form targets supply a cancellation-free version.
  std::function<double(double, double)> phi_diff;

  double log_norm = std::numeric_limits<double>::quiet_NaN();
  bool log_norm_known = false;

  double fisher_info = std::numeric_limits<double>::quiet_NaN();

  double holder_k = 1.0;
  double holder_gamma = 1.0;  // in (0,1]
  double holder_alpha = 1.0;  // >= 1
  std::optional<double> lipschitz;

  // Optional analytic pieces; estimators fall back to quadrature when absent.
  std::function<double(double)> cdf;       // F(x) of the normalized density
  std::function<double(double)> quantile;  // inverse CDF on (0,1)
  std::function<double(Philox&)> sampler;  // exact stationary sampler

  bool has_exact_sampler() const {
    return static_cast<bool>(sampler) || static_cast<bool>(quantile);
  }

  double sample(Philox& rng) const;

  // pi([-x, x]) for x >= 0; analytic CDF when present, quadrature otherwise
  // (requires log_norm for the quadrature route).
  double central_mass(double x, const QuadratureConfig& quad = {}) const;

  double density(double x) const { return std::exp(phi(x) - log_norm); }
};

// Built-in catalogue. gaussian(sigma): phi = -x^2/(2 sigma^2);
// tanh: phi' = -tanh(x) (hyperbolic-secant density, I = 1/2);
// logistic: phi = -2 log cosh(x/sqrt2) (logistic density, I = 2/3).
Potential make_gaussian(double sigma);
Potential make_tanh();
Potential make_logistic();

// Tabulated target: monotone cubic (Fritsch-Carlson) interpolation of phi on
// strictly increasing knots, linear extrapolation with the end slopes.
// No exact sampler; log_norm and fisher_info are filled by quadrature.
Potential make_spline(const std::vector<double>& x, const std::vector<double>& phi,
                      const QuadratureConfig& quad = {});

// Loads a spline target from two-column CSV (x, phi).
Potential load_spline_csv(const std::string& path, const QuadratureConfig& quad = {});

// Parses catalogue names: "gaussian(sigma)", "tanh", "logistic", "spline(path)".
Potential parse_target(const std::string& spec);

// I = int phi'(x)^2 f(x) dx by adaptive quadrature on a doubling interval.
// Stores the result in p.fisher_info (and log_norm when it was unknown).
double fisher_information(Potential& p, const QuadratureConfig& quad = {});

struct GridConfig {
  double x_min = -8.0, x_max = 8.0;
  int nx = 161;
  double v_min = -4.0, v_max = 4.0;
  int nv = 161;
};

struct RegularityReport {
  double holder_max_ratio = 0.0;
  bool holder_pass = true;
  double holder_witness_x = 0.0, holder_witness_v = 0.0;
  bool lipschitz_checked = false;
  double lipschitz_max_ratio = 0.0;
  bool lipschitz_pass = true;
  double lipschitz_witness_x = 0.0, lipschitz_witness_v = 0.0;
};

// Scans |phi'(x+v)-phi'(x)| / max(|v|^gamma, |v|^alpha) over the grid and
// compares against holder_k (and lipschitz when set). Report-only.
RegularityReport check_regularity(const Potential& p, const GridConfig& grid = {});

}  // namespace mhscale
