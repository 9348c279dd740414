#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mhscale/cylinder.hpp"
#include "mhscale/potential.hpp"
#include "mhscale/rng.hpp"

namespace mhscale {

struct ChainConfig {
  int n = 1;                 // dimension of the updated block
  double tau = 1.0;          // proposal scale; component proposals are N(0, tau^2/n)
  Potential target;
  std::uint64_t seed = 0;
  std::int64_t burn_in = 0;  // only used when the target has no exact sampler

  void validate() const;
};

struct ChainState {
  std::vector<double> x;
  std::uint64_t step = 0;
};

struct StepRecord {
  double log_ratio = 0.0;
  double log_u = 0.0;  // log of the drawn uniform, kept so decisions replay
  bool accepted = false;
  double delta_x1 = 0.0;
};

// Exact stationary start: n iid coordinates with density f.
ChainState draw_stationary(const ChainConfig& config, Philox& rng);

// log f(x + tau w / sqrt(n)) - log f(x), compensated summation, independent of
// the normalization constant. Throws NonFiniteValueError on non-finite terms.
double log_acceptance_ratio(std::span<const double> x, std::span<const double> w,
                            double tau, const Potential& p);

// One MHRW proposal/accept step; holds scratch so long runs do not allocate.
class MhrwStepper {
 public:
  explicit MhrwStepper(const ChainConfig& config);
  StepRecord step(ChainState& state, Philox& rng);

  const ChainConfig& config() const { return *config_; }

 private:
  const ChainConfig* config_;
  std::vector<double> w_;
  double scale_;
};

StepRecord step(ChainState& state, const ChainConfig& config, Philox& rng);

struct Trace {
  std::vector<std::uint64_t> steps;              // proposal index per retained row
  std::vector<StepRecord> records;               // rows for retained steps >= 1
  std::vector<std::vector<double>> observables;  // one row per retained step (incl. step 0)
  std::uint64_t total_steps = 0;
  double acceptance_rate = 0.0;  // over all proposals
  double esjd = 0.0;             // n * mean (delta x1)^2 over all proposals
  double wall_seconds = 0.0;
};

// Runs the chain from a stationary start (or burn-in for spline targets),
// recording observables and step records every `thin` proposals.
// Fully deterministic given config.seed.
Trace run_chain(const ChainConfig& config, std::uint64_t steps,
                const std::vector<CylinderFunction>& observables,
                std::uint64_t thin = 1);

}  // namespace mhscale
