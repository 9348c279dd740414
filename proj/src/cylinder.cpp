#include "mhscale/cylinder.hpp"

#include <cmath>

#include "mhscale/errors.hpp"

namespace mhscale {

namespace {

double bump1(double x, double r) {
  const double u = x / r;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump1_prime(double x, double r) {
  const double u = x / r;
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double w = 1.0 - u * u;
  return bump1(x, r) * (-2.0 * u / (w * w)) / r;
}

}  // namespace

CylinderFunction make_coord1() {
  CylinderFunction h;
  h.name = "coord1";
  h.N = 1;
  h.compact_support = false;
  h.eval = [](std::span<const double> x) { return x[0]; };
  h.grad = [](std::span<const double>, std::span<double> g) { g[0] = 1.0; };
  return h;
}

CylinderFunction make_bump(double r) {
  if (!(r > 0.0)) throw ConfigError("bump radius must be positive");
  CylinderFunction h;
  h.name = "bump(" + std::to_string(r) + ")";
  h.N = 1;
  h.compact_support = true;
  h.support_radius = r;
  h.sup_norm = 1.0;
  h.eval = [r](std::span<const double> x) { return bump1(x[0], r); };
  h.grad = [r](std::span<const double> x, std::span<double> g) {
    g[0] = bump1_prime(x[0], r);
  };
  return h;
}

CylinderFunction make_sin_bump(double r) {
  if (!(r > 0.0)) throw ConfigError("sin_bump radius must be positive");
  CylinderFunction h;
  h.name = "sin_bump(" + std::to_string(r) + ")";
  h.N = 1;
  h.compact_support = true;
  h.support_radius = r;
  h.sup_norm = 1.0;
  const double k = M_PI / r;
  h.eval = [r, k](std::span<const double> x) {
    return std::sin(k * x[0]) * bump1(x[0], r);
  };
  h.grad = [r, k](std::span<const double> x, std::span<double> g) {
    g[0] = k * std::cos(k * x[0]) * bump1(x[0], r) +
           std::sin(k * x[0]) * bump1_prime(x[0], r);
  };
  return h;
}

CylinderFunction make_bump_on_coordinate(int j, double r) {
  if (j < 1) throw ConfigError("coordinate index must be >= 1");
  CylinderFunction h = make_bump(r);
  h.name = "bump_coord" + std::to_string(j);
  h.N = j;
  h.eval = [j, r](std::span<const double> x) { return bump1(x[j - 1], r); };
  h.grad = [j, r](std::span<const double> x, std::span<double> g) {
    for (int i = 0; i < j; ++i) g[i] = 0.0;
    g[j - 1] = bump1_prime(x[j - 1], r);
  };
  return h;
}

CylinderFunction make_bump2(double r) {
  CylinderFunction h;
  h.name = "bump2(" + std::to_string(r) + ")";
  h.N = 2;
  h.compact_support = true;
  h.support_radius = r * 1.4142135623730951;
  h.sup_norm = 1.0;
  h.eval = [r](std::span<const double> x) { return bump1(x[0], r) * bump1(x[1], r); };
  h.grad = [r](std::span<const double> x, std::span<double> g) {
    g[0] = bump1_prime(x[0], r) * bump1(x[1], r);
    g[1] = bump1(x[0], r) * bump1_prime(x[1], r);
  };
  return h;
}

CylinderFunction parse_cylinder(const std::string& spec) {
  const auto open = spec.find('(');
  const std::string head = spec.substr(0, open);
  double arg = 1.0;
  if (open != std::string::npos) {
    const auto close = spec.rfind(')');
    if (close == std::string::npos || close < open) {
      throw ConfigError("malformed cylinder spec: " + spec);
    }
    arg = std::stod(spec.substr(open + 1, close - open - 1));
  }
  if (head == "coord1") return make_coord1();
  if (head == "bump") return make_bump(arg);
  if (head == "sin_bump") return make_sin_bump(arg);
  throw ConfigError("unknown cylinder function: " + spec);
}

std::vector<CylinderFunction> cylinder_catalogue() {
  return {make_coord1(), make_bump(1.0), make_sin_bump(1.0)};
}

}  // namespace mhscale
