#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mhscale {

// Test function h of the first N coordinates, with gradient. The smooth
// compactly supported ones are the Mosco/(M2) instances; h(x)=x1 is admitted
// as the expected-squared-jump diagnostic and flagged via compact_support.
struct CylinderFunction {
  std::string name;
  int N = 1;
  double support_radius = std::numeric_limits<double>::infinity();
  bool compact_support = false;
  std::function<double(std::span<const double>)> eval;
  std::function<void(std::span<const double>, std::span<double>)> grad;

  double sup_norm = std::numeric_limits<double>::infinity();
};

// h(x) = x1.
CylinderFunction make_coord1();

// Smooth bump exp(1 - 1/(1 - (x1/r)^2)) on |x1| < r, zero outside.
CylinderFunction make_bump(double r);

// Odd variant sin(pi x1 / r) * bump_r(x1).
CylinderFunction make_sin_bump(double r);

// Bump reading coordinate j (1-based) instead of the first; N = j.
CylinderFunction make_bump_on_coordinate(int j, double r);

// Two-coordinate product bump, for N > 1 coverage.
CylinderFunction make_bump2(double r);

// Parses "coord1", "bump(r)", "sin_bump(r)".
CylinderFunction parse_cylinder(const std::string& spec);

// The named catalogue used by the inequality sweeps.
std::vector<CylinderFunction> cylinder_catalogue();

}  // namespace mhscale
