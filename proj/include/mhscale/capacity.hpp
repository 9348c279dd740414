#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mhscale/potential.hpp"

namespace mhscale {

// Nest level for the compact boxes K^(n): quantile solves
// pi([-x, x]) = exp(-1/(n l^2)); k_value = max(n l, quantile), which keeps
// both the mass bound pi([-k,k]) >= exp(-1/(n l^2)) and the slope bound
// 1/k <= 1/(n l) summable.
struct NestLevel {
  int n = 0;
  int ell = 0;
  double quantile = 0.0;
  double k_value = 0.0;
};

NestLevel nest_level(const Potential& target, int n, int ell, double tol = 1e-10);

std::vector<NestLevel> nest_levels(const Potential& target, int n, int L,
                                   double tol = 1e-10);

// Shell coordinate function: 0 on |x| < k, (|x|-k)/(2k-|x|) on the shell,
// +inf outside |x| > 2k.
double shell_b(double x, double k);

// u^(n) on the L-coordinate truncation: s/(1+s) with s the sum of shell terms,
// and 1 when any term is infinite.
double u_n_eval(std::span<const double> x, std::span<const NestLevel> levels);

struct NestBound {
  int n = 0;
  int L = 0;
  double l2_bound = 0.0;        // 1 - exp(-pi^2/(6n)), analytic tail folded in
  double grad_sum_bound = 0.0;  // sum (1/k_l)^2 + tail via the (n l)^-2 cap
  double form_bound = 0.0;      // (tau^2 c/2) * grad_sum_bound
  double form_bound_alt = 0.0;  // alternative prefactor variant (tau c/2)
  double total = 0.0;           // l2_bound + form_bound
  double mc_l2 = 0.0, mc_l2_se = 0.0;
  double mc_grad_sum = 0.0, mc_grad_se = 0.0;
  double mc_form = 0.0, mc_form_se = 0.0;
  bool l2_ok = false;    // mc_l2 <= l2_bound + 3 se
  bool grad_ok = false;  // mc_grad_sum <= grad_sum_bound + 3 se
};

// Closed-form capacity bounds for Cap(R^inf \ K^(n)) plus Monte Carlo
// estimates of ||u^(n)||^2 and the gradient sum on the truncation.
NestBound capacity_bound(const Potential& target, double tau, int n, int L,
                         std::uint64_t reps, std::uint64_t seed,
                         unsigned threads = 0, double tol = 1e-10);

}  // namespace mhscale
