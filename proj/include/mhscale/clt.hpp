#pragma once

#include <cstdint>

#include "mhscale/sampler.hpp"

namespace mhscale {

// Limiting mean acceptance c(tau) = 2 F(-tau sqrt(I)/2).
double c_of_tau(double tau, double fisher_info);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
  std::uint64_t reps = 0;
};

struct CltReport {
  int n = 0;
  double tau = 0.0;
  std::uint64_t reps = 0;
  double mean = 0.0, mean_se = 0.0;
  double variance = 0.0, var_se = 0.0;
  double ks = 0.0;
  double limit_mean = 0.0, limit_sd = 0.0;  // -tau^2 I/2 and tau sqrt(I)
  bool degenerate = false;                  // tau = 0: point mass at zero
};

// Draws `reps` independent (X, W) pairs at stationarity and compares the log
// acceptance ratio against its N(-tau^2 I/2, tau^2 I) limit.
CltReport acceptance_clt(const ChainConfig& config, std::uint64_t reps,
                         unsigned threads = 0);

// Monte Carlo E[1 ^ exp(log ratio)] at stationarity.
Estimate mean_acceptance(const ChainConfig& config, std::uint64_t reps,
                         unsigned threads = 0);

struct BoundReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double max_slack = 0.0;  // max over samples of lhs - rhs (negative when safe)
  double witness_x = 0.0, witness_w = 0.0;
};

// Verifies the CLT remainder estimate sample by sample: the
// u-integral |W int_0^1 (phi'(x + tau u W/sqrt n) - phi'(x)) du| must stay
// below k |W| max(|tau W|^gamma, |tau W|^alpha) / (n^{gamma/2} (1+gamma)).
BoundReport remainder_bound_check(const Potential& p, double tau, int n,
                                  std::uint64_t samples, std::uint64_t seed,
                                  unsigned threads = 0);

struct TailReport {
  int n = 0;
  double eps = 0.0;
  double c_tilde = 0.0;
  double envelope = 0.0;   // 2 exp(-eps^2 n^gamma / (2 c~^2))
  double empirical = 0.0;  // Monte Carlo tail probability
  double empirical_se = 0.0;
  double z_mean = 0.0;     // E Z^(n)(X)
  bool satisfied = false;  // empirical <= envelope + 3 se
};

// Hoeffding concentration of (1/n) sum Z^(n)(X_i) around its mean, against the
// analytic envelope; Z^(n) is tabulated by quadrature on a dense grid.
TailReport hoeffding_envelope(const Potential& p, double tau, int n, double gamma,
                              double eps, std::uint64_t reps, std::uint64_t seed,
                              unsigned threads = 0);

}  // namespace mhscale
