#include "mhscale/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "mhscale/clt.hpp"
#include "mhscale/errors.hpp"
#include "mhscale/parallel.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

void SdeConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("sde dt must be positive");
  if (!(horizon >= dt)) throw ConfigError("sde horizon must be >= dt");
  if (!(tau >= 0.0)) throw ConfigError("tau must be nonnegative");
}

SdeCoefficients sde_coefficients(const SdeConfig& cfg) {
  SdeCoefficients c;
  c.speed = cfg.tau == 0.0 ? 0.0 : cfg.tau * cfg.tau * c_of_tau(cfg.tau, cfg.target.fisher_info);
  c.target = &cfg.target;
  return c;
}

double SdeCoefficients::diffusion() const { return std::sqrt(speed); }

SdePath euler_path(const SdeConfig& cfg, double u0, std::span<const double> z) {
  cfg.validate();
  if (!std::isfinite(u0)) throw ConfigError("u0 must be finite");
  const SdeCoefficients coef = sde_coefficients(cfg);
  const double root_dt = std::sqrt(cfg.dt);
  SdePath path;
  path.dt = cfg.dt;
  path.u.reserve(z.size() + 1);
  path.u.push_back(u0);
  double u = u0;
  for (double zk : z) {
    u += coef.drift(u) * cfg.dt + coef.diffusion() * root_dt * zk;
    if (!(std::abs(u) <= cfg.blowup_bound)) {
      throw NonFiniteValueError("sde path exceeded the blow-up bound");
    }
    path.u.push_back(u);
  }
  return path;
}

SdePath simulate_sde(const SdeConfig& cfg, double u0, Philox& rng) {
  cfg.validate();
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  std::vector<double> z(steps);
  for (auto& zk : z) zk = rng.normal();
  return euler_path(cfg, u0, z);
}

CoordPath rescaled_first_coordinate(const ChainConfig& config, double horizon,
                                    std::uint64_t thin) {
  config.validate();
  if (thin < 1) throw ConfigError("thin must be >= 1");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  const std::uint64_t total =
      static_cast<std::uint64_t>(std::floor(horizon * config.n));
  Philox rng(config.seed, stream_id(salt::kChain, 1));
  ChainState state = draw_stationary(config, rng);
  MhrwStepper stepper(config);
  CoordPath path;
  path.time_step = static_cast<double>(thin) / config.n;
  path.value.push_back(state.x[0]);
  for (std::uint64_t t = 1; t <= total; ++t) {
    stepper.step(state, rng);
    if (t % thin == 0) path.value.push_back(state.x[0]);
  }
  return path;
}

std::vector<SemigroupRow> semigroup_distance(const CylinderFunction& h,
                                             std::span<const double> t_grid,
                                             const ChainConfig& config,
                                             std::uint64_t outer_reps,
                                             std::uint64_t inner_reps,
                                             const SdeConfig& sde_cfg,
                                             unsigned threads) {
  config.validate();
  sde_cfg.validate();
  if (h.N != 1) throw DimensionError("semigroup distance expects an N=1 observable");
  if (outer_reps < 2 || inner_reps < 2) {
    throw ConfigError("semigroup distance needs outer_reps, inner_reps >= 2");
  }
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw ConfigError("t grid must be sorted ascending");
  }
  const std::size_t T = t_grid.size();

  // Snapshot indices; chain time floor(n t), SDE time round(t/dt).
  std::vector<std::uint64_t> chain_snap(T), sde_snap(T);
  std::uint64_t chain_total = 0, sde_total = 0;
  for (std::size_t k = 0; k < T; ++k) {
    chain_snap[k] = static_cast<std::uint64_t>(std::floor(config.n * t_grid[k]));
    sde_snap[k] = static_cast<std::uint64_t>(std::llround(t_grid[k] / sde_cfg.dt));
    chain_total = std::max(chain_total, chain_snap[k]);
    sde_total = std::max(sde_total, sde_snap[k]);
  }
  const std::uint64_t pairs = inner_reps / 2;

  // Per-outer-start rows: [o * T + k] -> (msd sample, coarse msd sample,
  // raw squared difference, inner-noise estimate).
  std::vector<double> msd_s(outer_reps * T), msd_c(outer_reps * T),
      raw_sq(outer_reps * T), noise(outer_reps * T);

  parallel_for(outer_reps, threads, [&](std::uint64_t o) {
    Philox outer_rng(config.seed, stream_id(salt::kSemigroupOuter, o));
    const ChainState start = draw_stationary(config, outer_rng);

    // Chain continuations.
    std::vector<RunningStat> chain_stat(T);
    MhrwStepper stepper(config);
    for (std::uint64_t i = 0; i < inner_reps; ++i) {
      Philox rng(config.seed,
                 stream_id(salt::kSemigroupChain, o * inner_reps + i));
      ChainState s = start;
      std::uint64_t done = 0;
      for (std::size_t k = 0; k < T; ++k) {
        while (done < chain_snap[k]) {
          stepper.step(s, rng);
          ++done;
        }
        chain_stat[k].add(h.eval(std::span<const double>(s.x.data(), 1)));
      }
    }

    // Antithetic SDE continuations, with a coarsened (2dt) run of the same
    // Brownian increments as the weak-error probe.
    SdeConfig coarse = sde_cfg;
    coarse.dt = 2.0 * sde_cfg.dt;
    std::vector<RunningStat> sde_stat(T), sde_coarse_stat(T);
    std::vector<double> z(sde_total), zc(sde_total / 2 + 1);
    const double u0 = start.x[0];
    for (std::uint64_t i = 0; i < pairs; ++i) {
      Philox rng(config.seed, stream_id(salt::kSemigroupSde, o * pairs + i));
      for (auto& zk : z) zk = rng.normal();
      for (int sgn = 0; sgn < 2; ++sgn) {
        if (sgn == 1) {
          for (auto& zk : z) zk = -zk;
        }
        const SdePath fine = euler_path(sde_cfg, u0, z);
        for (std::size_t k = 0; k < T; ++k) {
          const double v = fine.u[sde_snap[k]];
          sde_stat[k].add(h.eval(std::span<const double>(&v, 1)));
        }
        const std::size_t nc = sde_total / 2;
        zc.resize(nc);
        for (std::size_t j = 0; j < nc; ++j) {
          zc[j] = (z[2 * j] + z[2 * j + 1]) * 0.7071067811865475244;
        }
        const SdePath crse = euler_path(coarse, u0, zc);
        for (std::size_t k = 0; k < T; ++k) {
          const std::size_t idx = std::min(sde_snap[k] / 2, crse.u.size() - 1);
          const double v = crse.u[idx];
          sde_coarse_stat[k].add(h.eval(std::span<const double>(&v, 1)));
        }
      }
    }

    for (std::size_t k = 0; k < T; ++k) {
      const double mc = chain_stat[k].mean();
      const double vc = chain_stat[k].variance() /
                        static_cast<double>(chain_stat[k].count());
      const double ms = sde_stat[k].mean();
      const double vs =
          sde_stat[k].variance() / static_cast<double>(sde_stat[k].count());
      const double msc = sde_coarse_stat[k].mean();
      const double d = mc - ms;
      msd_s[o * T + k] = d * d - vc - vs;
      raw_sq[o * T + k] = d * d;
      noise[o * T + k] = vc + vs;
      const double dc = mc - msc;
      msd_c[o * T + k] = dc * dc - vc - vs;
    }
  });

  std::vector<SemigroupRow> rows(T);
  for (std::size_t k = 0; k < T; ++k) {
    RunningStat s_msd, s_coarse, s_raw, s_noise;
    for (std::uint64_t o = 0; o < outer_reps; ++o) {
      s_msd.add(msd_s[o * T + k]);
      s_coarse.add(msd_c[o * T + k]);
      s_raw.add(raw_sq[o * T + k]);
      s_noise.add(noise[o * T + k]);
    }
    SemigroupRow& r = rows[k];
    r.t = t_grid[k];
    r.msd = s_msd.mean();
    r.msd_se = s_msd.stderr_mean();
    r.rms = std::sqrt(std::max(0.0, r.msd));
    r.raw_rms = std::sqrt(std::max(0.0, s_raw.mean()));
    r.inner_noise = s_noise.mean();
    r.sde_bias = std::abs(s_msd.mean() - s_coarse.mean());
  }
  return rows;
}

namespace {

// Per-path autocorrelations at the requested index offsets.
std::vector<double> path_acf(std::span<const double> s,
                             std::span<const std::size_t> offsets) {
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  std::vector<double> out(offsets.size(), 0.0);
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    const std::size_t o = offsets[j];
    if (o >= s.size() || var == 0.0) {
      out[j] = o == 0 ? 1.0 : 0.0;
      continue;
    }
    double cov = 0.0;
    for (std::size_t t = 0; t + o < s.size(); ++t) {
      cov += (s[t] - mean) * (s[t + o] - mean);
    }
    out[j] = cov / var;
  }
  return out;
}

}  // namespace

std::vector<AcfRow> autocorrelation_compare(const ChainConfig& config,
                                            const SdeConfig& sde_cfg,
                                            std::span<const double> lags,
                                            std::uint64_t reps,
                                            unsigned threads) {
  config.validate();
  sde_cfg.validate();
  if (lags.empty()) throw ConfigError("lag grid must be nonempty");
  const double max_lag = *std::max_element(lags.begin(), lags.end());
  if (max_lag > sde_cfg.horizon) {
    throw ConfigError("lags must lie within the sde horizon");
  }
  const double delta = 0.05;  // sampling grid in rescaled time
  const std::uint64_t rec = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(delta * config.n)));
  const double chain_dt = static_cast<double>(rec) / config.n;
  const std::uint64_t chain_samples = static_cast<std::uint64_t>(
      std::floor(sde_cfg.horizon / chain_dt));
  std::vector<std::size_t> chain_off(lags.size()), sde_off(lags.size());
  const std::uint64_t sde_rec = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(delta / sde_cfg.dt)));
  for (std::size_t j = 0; j < lags.size(); ++j) {
    chain_off[j] = static_cast<std::size_t>(std::llround(lags[j] / chain_dt));
    sde_off[j] = static_cast<std::size_t>(
        std::llround(lags[j] / (sde_cfg.dt * static_cast<double>(sde_rec))));
  }

  const std::size_t L = lags.size();
  std::vector<double> chain_vals(reps * L), sde_vals(reps * L);
  parallel_for(reps, threads, [&](std::uint64_t r) {
    {
      Philox rng(config.seed, stream_id(salt::kAcfChain, r));
      ChainState s = draw_stationary(config, rng);
      MhrwStepper stepper(config);
      std::vector<double> series;
      series.reserve(chain_samples + 1);
      series.push_back(s.x[0]);
      for (std::uint64_t t = 1; t <= chain_samples * rec; ++t) {
        stepper.step(s, rng);
        if (t % rec == 0) series.push_back(s.x[0]);
      }
      const auto acf = path_acf(series, chain_off);
      for (std::size_t j = 0; j < L; ++j) chain_vals[r * L + j] = acf[j];
    }
    {
      Philox rng(config.seed, stream_id(salt::kAcfSde, r));
      const double u0 = config.target.sample(rng);
      const SdePath path = simulate_sde(sde_cfg, u0, rng);
      std::vector<double> series;
      series.reserve(path.u.size() / sde_rec + 1);
      for (std::size_t i = 0; i < path.u.size(); i += sde_rec) {
        series.push_back(path.u[i]);
      }
      const auto acf = path_acf(series, sde_off);
      for (std::size_t j = 0; j < L; ++j) sde_vals[r * L + j] = acf[j];
    }
  });

  std::vector<AcfRow> rows(L);
  for (std::size_t j = 0; j < L; ++j) {
    RunningStat c, s;
    for (std::uint64_t r = 0; r < reps; ++r) {
      c.add(chain_vals[r * L + j]);
      s.add(sde_vals[r * L + j]);
    }
    rows[j] = {lags[j], c.mean(), c.stderr_mean(), s.mean(), s.stderr_mean()};
  }
  return rows;
}

}  // namespace mhscale
