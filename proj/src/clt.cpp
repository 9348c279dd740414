#include "mhscale/clt.hpp"

#include <algorithm>
#include <cmath>

#include "mhscale/errors.hpp"
#include "mhscale/parallel.hpp"
#include "mhscale/quadrature.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

double c_of_tau(double tau, double fisher_info) {
  if (tau < 0.0) throw ConfigError("tau must be nonnegative");
  if (!(fisher_info > 0.0)) throw ConfigError("Fisher information must be positive");
  return 2.0 * normal_cdf(-0.5 * tau * std::sqrt(fisher_info));
}

namespace {

// One stationary (X, W) pair per replica; consumption order is fixed
// (X_i, W_i in coordinate order) so replica streams align across n.
double one_log_ratio(const ChainConfig& cfg, Philox& rng) {
  const double scale = cfg.tau / std::sqrt(static_cast<double>(cfg.n));
  KahanSum sum;
  for (int i = 0; i < cfg.n; ++i) {
    const double xi = cfg.target.sample(rng);
    const double wi = rng.normal();
    const double term = cfg.target.phi_diff(xi, scale * wi);
    if (!std::isfinite(term)) {
      throw NonFiniteValueError("phi evaluated to a non-finite value");
    }
    sum.add(term);
  }
  return sum.value();
}

}  // namespace

CltReport acceptance_clt(const ChainConfig& config, std::uint64_t reps,
                         unsigned threads) {
  config.validate();
  if (reps < 2) throw ConfigError("acceptance_clt needs reps >= 2");
  const double I = config.target.fisher_info;
  if (!(I > 0.0)) throw ConfigError("target needs fisher_info set");

  std::vector<double> samples(reps, 0.0);
  if (config.tau > 0.0) {
    parallel_for(reps, threads, [&](std::uint64_t r) {
      Philox rng(config.seed, stream_id(salt::kCltPairs, r));
      samples[r] = one_log_ratio(config, rng);
    });
  }

  CltReport rep;
  rep.n = config.n;
  rep.tau = config.tau;
  rep.reps = reps;
  rep.limit_mean = -0.5 * config.tau * config.tau * I;
  rep.limit_sd = config.tau * std::sqrt(I);
  rep.degenerate = config.tau == 0.0;

  RunningStat stat;
  for (double s : samples) stat.add(s);
  rep.mean = stat.mean();
  rep.mean_se = stat.stderr_mean();
  rep.variance = stat.variance();
  rep.var_se = rep.variance * std::sqrt(2.0 / static_cast<double>(reps - 1));

  std::sort(samples.begin(), samples.end());
  if (rep.degenerate) {
    rep.ks = 0.0;  // exact point mass at zero, by construction
  } else {
    const double mu = rep.limit_mean;
    const double sd = rep.limit_sd;
    rep.ks = ks_distance(samples,
                         [mu, sd](double v) { return normal_cdf((v - mu) / sd); });
  }
  return rep;
}

Estimate mean_acceptance(const ChainConfig& config, std::uint64_t reps,
                         unsigned threads) {
  config.validate();
  if (reps < 1) throw ConfigError("mean_acceptance needs reps >= 1");
  if (config.tau == 0.0) return {1.0, 0.0, reps};
  RunningStat stat = parallel_reduce<RunningStat>(
      reps, threads, 4096, [&](std::uint64_t r, RunningStat& acc) {
        Philox rng(config.seed, stream_id(salt::kMeanAcceptance, r));
        const double lr = one_log_ratio(config, rng);
        acc.add(lr >= 0.0 ? 1.0 : std::exp(lr));
      });
  return {stat.mean(), stat.stderr_mean(), reps};
}

BoundReport remainder_bound_check(const Potential& p, double tau, int n,
                                  std::uint64_t samples, std::uint64_t seed,
                                  unsigned threads) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  struct Acc {
    BoundReport rep{};
    bool any = false;
    void merge(const Acc& o) {
      rep.checked += o.rep.checked;
      rep.violations += o.rep.violations;
      if (o.any && (!any || o.rep.max_slack > rep.max_slack)) {
        rep.max_slack = o.rep.max_slack;
        rep.witness_x = o.rep.witness_x;
        rep.witness_w = o.rep.witness_w;
        any = true;
      }
    }
  };

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double denom = std::pow(static_cast<double>(n), 0.5 * p.holder_gamma) *
                       (1.0 + p.holder_gamma);
  Acc total = parallel_reduce<Acc>(samples, threads, 4096, [&](std::uint64_t s,
                                                               Acc& acc) {
    Philox rng(seed, stream_id(salt::kRemainder, s));
    const double x = p.sample(rng);
    const double w = rng.normal();
    const double lhs =
        std::abs(w) *
        std::abs(integrate_unit_interval_gl32([&](double u) {
          return p.phi_prime(x + tau * u * w / sqrt_n) - p.phi_prime(x);
        }));
    const double tw = std::abs(tau * w);
    const double rhs = p.holder_k * std::abs(w) *
                       std::max(std::pow(tw, p.holder_gamma),
                                std::pow(tw, p.holder_alpha)) /
                       denom;
    const double slack = lhs - rhs;
    ++acc.rep.checked;
    if (slack > 1e-12 * std::max(1.0, rhs)) ++acc.rep.violations;
    if (!acc.any || slack > acc.rep.max_slack) {
      acc.rep.max_slack = slack;
      acc.rep.witness_x = x;
      acc.rep.witness_w = w;
      acc.any = true;
    }
  });
  return total.rep;
}

TailReport hoeffding_envelope(const Potential& p, double tau, int n, double gamma,
                              double eps, std::uint64_t reps, std::uint64_t seed,
                              unsigned threads) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0,1]");

  // c~ = tau k/(1+gamma) E[|W| max(|tau W|^gamma, |tau W|^alpha)].
  const double alpha = p.holder_alpha;
  const double ew = integrate_real_line([&](double w) {
    const double tw = std::abs(tau * w);
    return std::abs(w) * std::max(std::pow(tw, gamma), std::pow(tw, alpha)) *
           0.3989422804014326779 * std::exp(-0.5 * w * w);
  });
  const double c_tilde = tau * p.holder_k / (1.0 + gamma) * ew;

  // Z^(n)(x) = tau sqrt(n) E[W int_0^1 (phi'(x + tau u W/sqrt n)-phi'(x)) du],
  // tabulated on a dense grid and interpolated linearly.
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double x_lo = p.quantile ? p.quantile(1e-13) : -10.0;
  const double x_hi = p.quantile ? p.quantile(1.0 - 1e-13) : 10.0;
  const int grid_n = 2048;
  std::vector<double> zgrid(grid_n + 1);
  parallel_for(grid_n + 1, threads, [&](std::uint64_t g) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(g) / grid_n;
    zgrid[g] = tau * sqrt_n *
               integrate_real_line([&](double w) {
                 const double inner = integrate_unit_interval_gl32([&](double u) {
                   return p.phi_prime(x + tau * u * w / sqrt_n) - p.phi_prime(x);
                 });
                 return w * inner * 0.3989422804014326779 *
                        std::exp(-0.5 * w * w);
               });
  });
  const double dx = (x_hi - x_lo) / grid_n;
  auto z_at = [&](double x) {
    const double t = (std::clamp(x, x_lo, x_hi) - x_lo) / dx;
    const int j = std::min(static_cast<int>(t), grid_n - 1);
    const double frac = t - j;
    return zgrid[j] * (1.0 - frac) + zgrid[j + 1] * frac;
  };

  const double z_mean = integrate_real_line(
      [&](double x) { return z_at(x) * p.density(x); });

  RunningStat tail = parallel_reduce<RunningStat>(
      reps, threads, 1024, [&](std::uint64_t r, RunningStat& acc) {
        Philox rng(seed, stream_id(salt::kHoeffding, r));
        KahanSum sum;
        for (int i = 0; i < n; ++i) sum.add(z_at(p.sample(rng)));
        const double dev = std::abs(sum.value() / n - z_mean);
        acc.add(dev > eps ? 1.0 : 0.0);
      });

  TailReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.c_tilde = c_tilde;
  rep.envelope =
      2.0 * std::exp(-eps * eps * std::pow(static_cast<double>(n), gamma) /
                     (2.0 * c_tilde * c_tilde));
  rep.empirical = tail.mean();
  rep.empirical_se = tail.stderr_mean();
  rep.z_mean = z_mean;
  rep.satisfied = rep.empirical <= rep.envelope + 3.0 * rep.empirical_se;
  return rep;
}

}  // namespace mhscale
