#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mhscale/cylinder.hpp"
#include "mhscale/sampler.hpp"

namespace mhscale {

struct SdeConfig {
  double tau = 1.0;
  Potential target;
  double dt = 1e-3;
  double horizon = 1.0;
  double blowup_bound = 1e6;

  void validate() const;
};

// Drift and diffusion pair of the limiting Langevin equation
// dU = tau sqrt(c) dB + (1/2) tau^2 c phi'(U) dt; speed s = tau^2 c(tau).
struct SdeCoefficients {
  double speed = 0.0;
  const Potential* target = nullptr;
  double drift(double u) const { return 0.5 * speed * target->phi_prime(u); }
  double diffusion() const;  // sqrt(speed)
};

SdeCoefficients sde_coefficients(const SdeConfig& cfg);

struct SdePath {
  double dt = 0.0;
  std::vector<double> u;  // u[k] at time k dt
};

// Euler-Maruyama driven by the provided standard normal increments.
SdePath euler_path(const SdeConfig& cfg, double u0, std::span<const double> z);

SdePath simulate_sde(const SdeConfig& cfg, double u0, Philox& rng);

struct CoordPath {
  double time_step = 0.0;  // thin / n in chain time
  std::vector<double> value;
};

// First chain coordinate at rescaled times t = j thin / n.
CoordPath rescaled_first_coordinate(const ChainConfig& config, double horizon,
                                    std::uint64_t thin);

struct SemigroupRow {
  double t = 0.0;
  double msd = 0.0;      // debiased mean squared semigroup difference over starts
  double msd_se = 0.0;
  double rms = 0.0;      // sqrt(max(msd, 0))
  double raw_rms = 0.0;  // without the inner-noise debias
  double inner_noise = 0.0;
  double sde_bias = 0.0;  // |msd(dt) - msd(2dt)| probe
};

// ||T^(n)_t h - T_t h|| by nested Monte Carlo: outer stationary starts, inner
// chain continuations against antithetic SDE continuations.
std::vector<SemigroupRow> semigroup_distance(const CylinderFunction& h,
                                             std::span<const double> t_grid,
                                             const ChainConfig& config,
                                             std::uint64_t outer_reps,
                                             std::uint64_t inner_reps,
                                             const SdeConfig& sde_cfg,
                                             unsigned threads = 0);

struct AcfRow {
  double lag = 0.0;
  double chain = 0.0, chain_se = 0.0;
  double sde = 0.0, sde_se = 0.0;
};

// Stationary autocorrelation of the rescaled first coordinate vs the SDE at
// matched continuous lags.
std::vector<AcfRow> autocorrelation_compare(const ChainConfig& config,
                                            const SdeConfig& sde_cfg,
                                            std::span<const double> lags,
                                            std::uint64_t reps,
                                            unsigned threads = 0);

}  // namespace mhscale
