#pragma once

#include <cstdint>
#include <vector>

#include "mhscale/sampler.hpp"

namespace mhscale {

// Speed of the limiting diffusion, tau^2 c(tau).
double speed(double tau, double fisher_info);

struct OptimalScaling {
  double tau_star = 0.0;
  double speed_star = 0.0;
  double acc_star = 0.0;  // c(tau_star); ~0.234 for every I
};

// Golden-section maximization of the unimodal speed on (0, 20/sqrt(I)].
// A coarse scan guards the unimodality assumption and brackets the maximum.
OptimalScaling optimize_tau(double fisher_info, double tol = 1e-8);

struct SpeedRow {
  double tau = 0.0;
  double esjd = 0.0, esjd_se = 0.0;  // n E[(dX1)^2], rejections counted as zero
  double asymptote = 0.0;            // tau^2 c(tau)
  double acc = 0.0, acc_se = 0.0;
};

struct SpeedCurve {
  std::vector<SpeedRow> rows;
  std::size_t argmax = 0;  // index of the empirical ESJD maximum
};

// Finite-n ESJD curve over a tau grid with the asymptote alongside.
SpeedCurve empirical_speed_curve(const Potential& target, int n,
                                 const std::vector<double>& tau_grid,
                                 std::uint64_t reps, std::uint64_t seed,
                                 unsigned threads = 0);

}  // namespace mhscale
