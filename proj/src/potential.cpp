#include "mhscale/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "mhscale/errors.hpp"

namespace mhscale {

namespace {

// log cosh without overflow: |x| + log1p(e^{-2|x|}) - log 2.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094;
}

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

}  // namespace

double Potential::sample(Philox& rng) const {
  if (sampler) return sampler(rng);
  if (quantile) return quantile(rng.uniform01_interior());
  throw UnsupportedTargetError("target '" + name +
                               "' has no exact stationary sampler");
}

double Potential::central_mass(double x, const QuadratureConfig& quad) const {
  if (x <= 0.0) return 0.0;
  if (cdf) return cdf(x) - cdf(-x);
  if (!log_norm_known) {
    throw UnsupportedTargetError(
        "central_mass requires an analytic CDF or a known log_norm");
  }
  return integrate([this](double t) { return density(t); }, -x, x, quad);
}

Potential make_gaussian(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
  Potential p;
  p.name = "gaussian(" + std::to_string(sigma) + ")";
  const double inv_var = 1.0 / (sigma * sigma);
  p.phi = [inv_var](double x) { return -0.5 * x * x * inv_var; };
  p.phi_prime = [inv_var](double x) { return -x * inv_var; };
  p.phi_diff = [inv_var](double x, double v) {
    return -0.5 * v * (2.0 * x + v) * inv_var;
  };
  p.log_norm = kLogSqrt2Pi + std::log(sigma);
  p.log_norm_known = true;
  p.fisher_info = inv_var;
  p.holder_k = inv_var;
  p.holder_gamma = 1.0;
  p.holder_alpha = 1.0;
  p.lipschitz = inv_var;
  p.cdf = [sigma](double x) { return 0.5 * std::erfc(-x / (sigma * 1.4142135623730950488)); };
  p.sampler = [sigma](Philox& rng) { return sigma * rng.normal(); };
  return p;
}

Potential make_tanh() {
  Potential p;
  p.name = "tanh";
  p.phi = [](double x) { return -log_cosh(x); };
  p.phi_prime = [](double x) { return -std::tanh(x); };
  p.phi_diff = [](double x, double v) { return log_cosh(x) - log_cosh(x + v); };
  p.log_norm = std::log(M_PI);  // int sech = pi
  p.log_norm_known = true;
  p.fisher_info = 0.5;
  p.holder_k = 1.0;  // sup |phi''| = sup sech^2 = 1
  p.holder_gamma = 1.0;
  p.holder_alpha = 1.0;
  p.lipschitz = 1.0;
  p.cdf = [](double x) { return M_2_PI * std::atan(std::exp(x)); };
  p.quantile = [](double u) { return std::log(std::tan(M_PI_2 * u)); };
  return p;
}

Potential make_logistic() {
  Potential p;
  p.name = "logistic";
  const double s2 = 1.4142135623730950488;
  p.phi = [s2](double x) { return -2.0 * log_cosh(x / s2); };
  p.phi_prime = [s2](double x) { return -s2 * std::tanh(x / s2); };
  p.phi_diff = [s2](double x, double v) {
    return 2.0 * (log_cosh(x / s2) - log_cosh((x + v) / s2));
  };
  p.log_norm = std::log(2.0 * s2);  // int sech^2(x/sqrt2) = 2 sqrt2
  p.log_norm_known = true;
  p.fisher_info = 2.0 / 3.0;
  p.holder_k = 1.0;
  p.holder_gamma = 1.0;
  p.holder_alpha = 1.0;
  p.lipschitz = 1.0;
  p.cdf = [s2](double x) { return 1.0 / (1.0 + std::exp(-s2 * x)); };
  p.quantile = [s2](double u) { return std::log(u / (1.0 - u)) / s2; };
  return p;
}

namespace {

// Fritsch-Carlson monotone cubic Hermite interpolant.
struct Pchip {
  std::vector<double> x, y, d;

  Pchip(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    if (n < 2) throw ConfigError("spline needs at least two knots");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x[i] < x[i + 1])) {
        throw ConfigError("spline knots must be strictly increasing");
      }
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    d.assign(n, 0.0);
    if (n == 2) {
      d[0] = d[1] = delta[0];
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
          d[i] = 0.0;
        } else {
          const double w1 = 2.0 * h[i] + h[i - 1];
          const double w2 = h[i] + 2.0 * h[i - 1];
          d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
      }
      d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
      d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
  }

  static double edge_slope(double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s;
  }

  std::size_t interval(double t) const {
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    return std::min(std::max<std::size_t>(j, 1), x.size() - 1) - 1;
  }

  double eval(double t) const {
    if (t <= x.front()) return y.front() + d.front() * (t - x.front());
    if (t >= x.back()) return y.back() + d.back() * (t - x.back());
    const std::size_t i = interval(t);
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return y[i] * (2 * s3 - 3 * s2 + 1) + h * d[i] * (s3 - 2 * s2 + s) +
           y[i + 1] * (-2 * s3 + 3 * s2) + h * d[i + 1] * (s3 - s2);
  }

  double deriv(double t) const {
    if (t <= x.front()) return d.front();
    if (t >= x.back()) return d.back();
    const std::size_t i = interval(t);
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double s2 = s * s;
    return (y[i] * (6 * s2 - 6 * s) + h * d[i] * (3 * s2 - 4 * s + 1) +
            y[i + 1] * (6 * s - 6 * s2) + h * d[i + 1] * (3 * s2 - 2 * s)) /
           h;
  }
};

}  // namespace

Potential make_spline(const std::vector<double>& x, const std::vector<double>& phi,
                      const QuadratureConfig& quad) {
  auto spline = std::make_shared<Pchip>(x, phi);
  Potential p;
  p.name = "spline";
  p.phi = [spline](double t) { return spline->eval(t); };
  p.phi_prime = [spline](double t) { return spline->deriv(t); };
  p.phi_diff = [spline](double t, double v) {
    return spline->eval(t + v) - spline->eval(t);
  };
  fisher_information(p, quad);  // fills fisher_info and log_norm, or throws
  // Conservative defaults: the interpolant inherits no analytic constants, so
  // calibrate k to the observed slope variation.
  RegularityReport rep = check_regularity(p);
  p.holder_k = rep.holder_max_ratio * 1.05 + 1e-12;
  return p;
}

Potential load_spline_csv(const std::string& path, const QuadratureConfig& quad) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spline file: " + path);
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a >> b)) {
      if (xs.empty()) continue;  // tolerate a header row
      throw ConfigError("malformed spline row: " + line);
    }
    xs.push_back(a);
    ys.push_back(b);
  }
  Potential p = make_spline(xs, ys, quad);
  p.name = "spline(" + path + ")";
  return p;
}

Potential parse_target(const std::string& spec) {
  const auto open = spec.find('(');
  const std::string head = spec.substr(0, open);
  std::string arg;
  if (open != std::string::npos) {
    const auto close = spec.rfind(')');
    if (close == std::string::npos || close < open) {
      throw ConfigError("malformed target spec: " + spec);
    }
    arg = spec.substr(open + 1, close - open - 1);
  }
  if (head == "gaussian") {
    if (arg.empty()) throw ConfigError("gaussian target needs sigma");
    return make_gaussian(std::stod(arg));
  }
  if (head == "tanh") return make_tanh();
  if (head == "logistic") return make_logistic();
  if (head == "spline") {
    if (arg.empty()) throw ConfigError("spline target needs a file path");
    return load_spline_csv(arg);
  }
  throw ConfigError("unknown target: " + spec);
}

double fisher_information(Potential& p, const QuadratureConfig& quad) {
  // Shift phi by its grid maximum so exp stays in range for unnormalized input.
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 128; ++i) {
    const double t = -quad.initial_radius +
                     2.0 * quad.initial_radius * static_cast<double>(i) / 128.0;
    shift = std::max(shift, p.phi(t));
  }
  if (!std::isfinite(shift)) {
    throw NonFiniteValueError("phi is non-finite on the scan grid");
  }
  const auto weight = [&p, shift](double t) { return std::exp(p.phi(t) - shift); };
  const double z = integrate_real_line(weight, quad);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DivergentIntegralError("density does not normalize");
  }
  const double raw = integrate_real_line(
      [&p, &weight](double t) {
        const double g = p.phi_prime(t);
        return g * g * weight(t);
      },
      quad);
  const double fisher = raw / z;
  if (!(fisher > 0.0) || !std::isfinite(fisher)) {
    throw DivergentIntegralError("Fisher information integral did not converge");
  }
  p.fisher_info = fisher;
  if (!p.log_norm_known) {
    p.log_norm = std::log(z) + shift;
    p.log_norm_known = true;
  }
  return fisher;
}

RegularityReport check_regularity(const Potential& p, const GridConfig& grid) {
  RegularityReport rep;
  rep.lipschitz_checked = p.lipschitz.has_value();
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1.0);
    const double gx = p.phi_prime(x);
    for (int j = 0; j < grid.nv; ++j) {
      const double v = grid.v_min + (grid.v_max - grid.v_min) * j / (grid.nv - 1.0);
      if (v == 0.0) continue;
      const double diff = std::abs(p.phi_prime(x + v) - gx);
      const double av = std::abs(v);
      const double holder_scale =
          std::max(std::pow(av, p.holder_gamma), std::pow(av, p.holder_alpha));
      const double r = diff / holder_scale;
      if (r > rep.holder_max_ratio) {
        rep.holder_max_ratio = r;
        rep.holder_witness_x = x;
        rep.holder_witness_v = v;
      }
      if (rep.lipschitz_checked) {
        const double rl = diff / av;
        if (rl > rep.lipschitz_max_ratio) {
          rep.lipschitz_max_ratio = rl;
          rep.lipschitz_witness_x = x;
          rep.lipschitz_witness_v = v;
        }
      }
    }
  }
  const double tol = 1.0 + 1e-9;
  rep.holder_pass = rep.holder_max_ratio <= p.holder_k * tol + 1e-12;
  if (rep.lipschitz_checked) {
    rep.lipschitz_pass = rep.lipschitz_max_ratio <= *p.lipschitz * tol + 1e-12;
  }
  return rep;
}

}  // namespace mhscale
