#include "mhscale/sampler.hpp"

#include <chrono>
#include <cmath>

#include "mhscale/errors.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

void ChainConfig::validate() const {
  if (n < 1) throw ConfigError("chain dimension n must be >= 1");
  // tau = 0 is the degenerate identity-proposal edge used by the CLT checks.
  if (!(tau >= 0.0)) throw ConfigError("proposal scale tau must be nonnegative");
  if (burn_in < 0) throw ConfigError("burn_in must be nonnegative");
}

ChainState draw_stationary(const ChainConfig& config, Philox& rng) {
  config.validate();
  ChainState s;
  s.x.resize(static_cast<std::size_t>(config.n));
  for (auto& xi : s.x) xi = config.target.sample(rng);
  s.step = 0;
  return s;
}

double log_acceptance_ratio(std::span<const double> x, std::span<const double> w,
                            double tau, const Potential& p) {
  if (x.size() != w.size()) {
    throw DimensionError("state and proposal noise must have equal length");
  }
  const double scale = tau / std::sqrt(static_cast<double>(x.size()));
  KahanSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double term = p.phi_diff(x[i], scale * w[i]);
    if (!std::isfinite(term)) {
      throw NonFiniteValueError("phi evaluated to a non-finite value");
    }
    sum.add(term);
  }
  return sum.value();
}

MhrwStepper::MhrwStepper(const ChainConfig& config)
    : config_(&config),
      w_(static_cast<std::size_t>(config.n)),
      scale_(config.tau / std::sqrt(static_cast<double>(config.n))) {
  config.validate();
}

StepRecord MhrwStepper::step(ChainState& state, Philox& rng) {
  const Potential& p = config_->target;
  KahanSum sum;
  for (auto& wi : w_) {
    wi = rng.normal();
  }
  for (std::size_t i = 0; i < w_.size(); ++i) {
    const double term = p.phi_diff(state.x[i], scale_ * w_[i]);
    if (!std::isfinite(term)) {
      throw NonFiniteValueError("phi evaluated to a non-finite value");
    }
    sum.add(term);
  }
  StepRecord rec;
  rec.log_ratio = sum.value();
  rec.log_u = std::log(rng.uniform01());
  rec.accepted = rec.log_u < rec.log_ratio;
  if (rec.accepted) {
    rec.delta_x1 = scale_ * w_[0];
    for (std::size_t i = 0; i < w_.size(); ++i) state.x[i] += scale_ * w_[i];
  }
  ++state.step;
  return rec;
}

StepRecord step(ChainState& state, const ChainConfig& config, Philox& rng) {
  MhrwStepper stepper(config);
  return stepper.step(state, rng);
}

namespace {

// Start for targets without an exact sampler: the potential's grid mode,
// sharpened by burn-in before any statistics are read.
ChainState burned_in_start(const ChainConfig& config, Philox& rng) {
  double best_x = 0.0;
  double best_phi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const double t = -16.0 + 32.0 * i / 256.0;
    const double v = config.target.phi(t);
    if (v > best_phi) {
      best_phi = v;
      best_x = t;
    }
  }
  ChainState s;
  s.x.assign(static_cast<std::size_t>(config.n), best_x);
  MhrwStepper stepper(config);
  for (std::int64_t b = 0; b < config.burn_in; ++b) stepper.step(s, rng);
  s.step = 0;
  return s;
}

}  // namespace

Trace run_chain(const ChainConfig& config, std::uint64_t steps,
                const std::vector<CylinderFunction>& observables,
                std::uint64_t thin) {
  config.validate();
  if (thin < 1) throw ConfigError("thin must be >= 1");
  for (const auto& h : observables) {
    if (h.N > config.n) {
      throw DimensionError("observable '" + h.name + "' reads more coordinates than n");
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  Philox rng(config.seed, stream_id(salt::kChain, 0));
  ChainState state = config.target.has_exact_sampler()
                         ? draw_stationary(config, rng)
                         : burned_in_start(config, rng);

  Trace trace;
  auto record_observables = [&]() {
    std::vector<double> row;
    row.reserve(observables.size());
    for (std::size_t k = 0; k < observables.size(); ++k) {
      double v = 0.0;
      try {
        v = observables[k].eval(std::span<const double>(state.x.data(),
                                                        observables[k].N));
      } catch (const std::exception& e) {
        throw ObservableError(k, "observable " + std::to_string(k) + " (" +
                                     observables[k].name + ") failed: " + e.what());
      }
      if (!std::isfinite(v)) {
        throw ObservableError(k, "observable " + std::to_string(k) + " (" +
                                     observables[k].name + ") is non-finite");
      }
      row.push_back(v);
    }
    trace.steps.push_back(state.step);
    trace.observables.push_back(std::move(row));
  };

  record_observables();  // step 0 row

  MhrwStepper stepper(config);
  std::uint64_t accepted = 0;
  KahanSum jump_sq;
  for (std::uint64_t t = 1; t <= steps; ++t) {
    const StepRecord rec = stepper.step(state, rng);
    accepted += rec.accepted ? 1 : 0;
    jump_sq.add(rec.delta_x1 * rec.delta_x1);
    if (t % thin == 0) {
      record_observables();
      trace.records.push_back(rec);
    }
  }
  trace.total_steps = steps;
  if (steps > 0) {
    trace.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(steps);
    trace.esjd = static_cast<double>(config.n) * jump_sq.value() /
                 static_cast<double>(steps);
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

}  // namespace mhscale
