#include "mhscale/forms.hpp"

#include <algorithm>
#include <cmath>

#include "mhscale/errors.hpp"
#include "mhscale/parallel.hpp"
#include "mhscale/quadrature.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

namespace {

// E[g(X_1..X_N)] under the product target: nested adaptive quadrature for
// N <= 3 over a quantile box, Monte Carlo otherwise. half_width clips the
// box to the integrand's support so narrow bumps are not lost between the
// nodes of a wide first panel.
double product_expectation_quad(const std::function<double(std::span<const double>)>& g,
                                const Potential& target, int N,
                                double half_width) {
  if (N > 3) throw ConfigError("tensor quadrature is limited to N <= 3");
  double lo = target.quantile ? target.quantile(1e-14) : -10.0;
  double hi = target.quantile ? target.quantile(1.0 - 1e-14) : 10.0;
  if (std::isfinite(half_width)) {
    lo = std::max(lo, -half_width);
    hi = std::min(hi, half_width);
  }
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-9;
  std::vector<double> x(static_cast<std::size_t>(N));
  std::function<double(int)> level = [&](int d) -> double {
    return integrate(
        [&](double t) {
          x[d] = t;
          const double w = target.density(t);
          if (d + 1 == N) return g(x) * w;
          return level(d + 1) * w;
        },
        lo, hi, cfg);
  };
  return level(0);
}

double product_expectation_mc(const std::function<double(std::span<const double>)>& g,
                              const Potential& target, int N, std::uint64_t reps,
                              std::uint64_t seed, unsigned threads, double* se) {
  RunningStat stat = parallel_reduce<RunningStat>(
      reps, threads, 4096, [&](std::uint64_t r, RunningStat& acc) {
        Philox rng(seed, stream_id(salt::kExpectation, r));
        std::vector<double> x(static_cast<std::size_t>(N));
        for (auto& xi : x) xi = target.sample(rng);
        acc.add(g(x));
      });
  if (se) *se = stat.stderr_mean();
  return stat.mean();
}

double grad_sq(const CylinderFunction& h, std::span<const double> x,
               std::span<double> g) {
  h.grad(x, g);
  double s = 0.0;
  for (double v : g) s += v * v;
  return s;
}

}  // namespace

FormEstimate discrete_form(const CylinderFunction& h, const ChainConfig& config,
                           std::uint64_t reps, unsigned threads) {
  config.validate();
  if (h.N > config.n) {
    throw DimensionError("cylinder function reads " + std::to_string(h.N) +
                         " coordinates but n = " + std::to_string(config.n));
  }
  if (reps < 2) throw ConfigError("discrete_form needs reps >= 2");
  const int n = config.n;
  const int N = h.N;
  const double scale = config.tau / std::sqrt(static_cast<double>(n));
  const double half_n = 0.5 * static_cast<double>(n);

  RunningStat stat = parallel_reduce<RunningStat>(
      reps, threads, 2048, [&](std::uint64_t r, RunningStat& acc) {
        Philox rng(config.seed, stream_id(salt::kDiscreteForm, r));
        // Stream layout per replica: U, then (X_i, W_i) pairs; the first
        // min(n, n') pairs coincide across ladder rungs with equal seeds.
        const double log_u = std::log(rng.uniform01());
        thread_local std::vector<double> xh, yh;
        xh.resize(static_cast<std::size_t>(N));
        yh.resize(static_cast<std::size_t>(N));
        KahanSum sum;
        for (int i = 0; i < n; ++i) {
          const double xi = config.target.sample(rng);
          const double wi = rng.normal();
          if (i < N) {
            xh[static_cast<std::size_t>(i)] = xi;
            yh[static_cast<std::size_t>(i)] = xi + scale * wi;
          }
          const double term = config.target.phi_diff(xi, scale * wi);
          if (!std::isfinite(term)) {
            throw NonFiniteValueError("phi evaluated to a non-finite value");
          }
          sum.add(term);
        }
        if (log_u < sum.value()) {
          const double dh = h.eval(yh) - h.eval(xh);
          acc.add(half_n * dh * dh);
        } else {
          acc.add(0.0);
        }
      });
  return {stat.mean(), stat.stderr_mean(), reps, FormKind::discrete_form};
}

FormEstimate limit_form(const CylinderFunction& h, double tau,
                        const Potential& target, std::uint64_t reps,
                        std::uint64_t seed, unsigned threads) {
  const double c = c_of_tau(tau, target.fisher_info);
  const double pref = 0.5 * tau * tau * c;
  auto g2 = [&h](std::span<const double> x) {
    thread_local std::vector<double> g;
    g.resize(x.size());
    return grad_sq(h, x, g);
  };
  if (reps == 0) {
    return {pref * product_expectation_quad(g2, target, h.N, h.support_radius),
            0.0, 0, FormKind::limit_form};
  }
  double se = 0.0;
  const double e = product_expectation_mc(g2, target, h.N, reps, seed, threads, &se);
  return {pref * e, pref * se, reps, FormKind::limit_form};
}

FormEstimate sobolev_norm(const CylinderFunction& h, const Potential& target,
                          std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  auto integrand = [&h](std::span<const double> x) {
    thread_local std::vector<double> g;
    g.resize(x.size());
    const double v = h.eval(x);
    return v * v + grad_sq(h, x, g);
  };
  if (reps == 0) {
    return {product_expectation_quad(integrand, target, h.N, h.support_radius),
            0.0, 0, FormKind::sobolev_norm};
  }
  double se = 0.0;
  const double e =
      product_expectation_mc(integrand, target, h.N, reps, seed, threads, &se);
  return {e, se, reps, FormKind::sobolev_norm};
}

FormEstimate l2_norm(const CylinderFunction& h, const Potential& target,
                     std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  auto integrand = [&h](std::span<const double> x) {
    const double v = h.eval(x);
    return v * v;
  };
  if (reps == 0) {
    return {product_expectation_quad(integrand, target, h.N, h.support_radius),
            0.0, 0, FormKind::l2_norm};
  }
  double se = 0.0;
  const double e =
      product_expectation_mc(integrand, target, h.N, reps, seed, threads, &se);
  return {e, se, reps, FormKind::l2_norm};
}

MoscoTable mosco_m2_curve(const CylinderFunction& h, double tau,
                          const Potential& target, const std::vector<int>& n_ladder,
                          std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (n_ladder.empty()) throw ConfigError("n ladder must be nonempty");
  MoscoTable table;
  table.h_compact = h.compact_support;
  const FormEstimate lim = limit_form(h, tau, target, 0);
  double prev_gap = 0.0, prev_se = 0.0;
  for (std::size_t k = 0; k < n_ladder.size(); ++k) {
    ChainConfig cfg{n_ladder[k], tau, target, seed, 0};
    const FormEstimate fn = discrete_form(h, cfg, reps, threads);
    MoscoRow row;
    row.n = n_ladder[k];
    row.phi_n = fn.value;
    row.phi_n_se = fn.se;
    row.phi_limit = lim.value;
    row.rel_gap = std::abs(fn.value - lim.value) / std::abs(lim.value);
    if (k > 0) {
      const double gap = std::abs(fn.value - lim.value);
      const double comb = 2.0 * (fn.se + prev_se);
      row.gap_grew = gap > prev_gap + comb;
    }
    prev_gap = std::abs(fn.value - lim.value);
    prev_se = fn.se;
    table.rows.push_back(row);
  }
  return table;
}

std::pair<double, int> chi2_sup_term(double eps, int n_max) {
  double best = 0.0;
  int arg = 1;
  for (int n = 1; n <= n_max; ++n) {
    const double v = 2.0 * n * chi2_tail(n, (1.0 + eps) * n);
    if (v > best) {
      best = v;
      arg = n;
    }
  }
  return {best, arg};
}

DominationReport domination_check(const CylinderFunction& h, double tau,
                                  const Potential& target,
                                  const std::vector<int>& n_ladder, double eps,
                                  std::uint64_t reps, std::uint64_t seed,
                                  unsigned threads) {
  if (!target.lipschitz.has_value()) {
    throw ConfigError("domination_check requires target.lipschitz (phi' Lipschitz)");
  }
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  DominationReport rep;
  rep.eps = eps;
  const auto [sup, arg] = chi2_sup_term(eps);
  rep.sup_term = sup;
  rep.sup_argmax_n = arg;
  rep.exp_term =
      0.5 * tau * tau * std::exp(tau * tau * (*target.lipschitz) * (1.0 + eps));
  rep.constant = rep.sup_term + rep.exp_term;

  const double l2 = l2_norm(h, target).value;
  const double phi = limit_form(h, tau, target).value;
  for (int n : n_ladder) {
    ChainConfig cfg{n, tau, target, seed, 0};
    const FormEstimate fn = discrete_form(h, cfg, reps, threads);
    DominationRow row;
    row.n = n;
    row.phi_n = fn.value;
    row.phi_n_se = fn.se;
    row.l2 = l2;
    row.phi_limit = phi;
    row.rhs = rep.constant * (l2 + phi);
    row.margin = row.rhs + 3.0 * fn.se - fn.value;
    row.violation = row.margin < 0.0;
    if (row.violation) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

Chi2Report chi2_chernoff_check(const std::vector<int>& n_ladder, double eps,
                               std::uint64_t reps, std::uint64_t seed,
                               unsigned threads) {
  if (eps < 0.0) throw ConfigError("eps must be nonnegative");
  Chi2Report rep;
  rep.eps = eps;
  double prev_np = std::numeric_limits<double>::infinity();
  for (int n : n_ladder) {
    const double c = (1.0 + eps) * n;
    Chi2Row row;
    row.n = n;
    row.exact_tail = chi2_tail(n, c);
    row.bound = chi2_chernoff_bound(n, c);
    if (reps > 0) {
      RunningStat stat = parallel_reduce<RunningStat>(
          reps, threads, 1024, [&](std::uint64_t r, RunningStat& acc) {
            Philox rng(seed, stream_id(salt::kChi2, r));
            KahanSum s;
            for (int i = 0; i < n; ++i) {
              const double w = rng.normal();
              s.add(w * w);
            }
            acc.add(s.value() > c ? 1.0 : 0.0);
          });
      row.mc_tail = stat.mean();
      row.mc_se = stat.stderr_mean();
    }
    row.n_times_exact = n * row.exact_tail;
    row.bound_holds = row.exact_tail <= row.bound * (1.0 + 1e-12) &&
                      row.mc_tail <= row.bound + 3.0 * row.mc_se;
    rep.all_bounds_hold = rep.all_bounds_hold && row.bound_holds;
    if (row.n_times_exact > prev_np) rep.n_p_decreasing = false;
    prev_np = row.n_times_exact;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mhscale
