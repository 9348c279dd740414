#include "mhscale/scaling.hpp"

#include <cmath>

#include "mhscale/clt.hpp"
#include "mhscale/errors.hpp"
#include "mhscale/parallel.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

double speed(double tau, double fisher_info) {
  return tau * tau * c_of_tau(tau, fisher_info);
}

OptimalScaling optimize_tau(double fisher_info, double tol) {
  if (!(fisher_info > 0.0)) throw ConfigError("Fisher information must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  const double hi = 20.0 / std::sqrt(fisher_info);

  // Coarse scan: locate the bracket and reject non-unimodal shapes.
  const int m = 256;
  std::vector<double> s(m + 1);
  int best = 0;
  for (int i = 0; i <= m; ++i) {
    s[i] = speed(hi * i / m, fisher_info);
    if (s[i] > s[best]) best = i;
  }
  int ascents_after_descent = 0;
  bool descending = false;
  for (int i = 1; i <= m; ++i) {
    if (s[i] < s[i - 1] - 1e-14) descending = true;
    if (descending && s[i] > s[i - 1] + 1e-12 * std::abs(s[i - 1])) {
      ++ascents_after_descent;
    }
  }
  if (ascents_after_descent > 0 || best == 0 || best == m) {
    throw std::runtime_error("speed curve bracket failure (not unimodal on scan)");
  }

  double a = hi * (best - 1) / m;
  double b = hi * (best + 1) / m;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = speed(x1, fisher_info);
  double f2 = speed(x2, fisher_info);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = speed(x2, fisher_info);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = speed(x1, fisher_info);
    }
  }
  OptimalScaling opt;
  opt.tau_star = 0.5 * (a + b);
  opt.speed_star = speed(opt.tau_star, fisher_info);
  opt.acc_star = c_of_tau(opt.tau_star, fisher_info);
  return opt;
}

SpeedCurve empirical_speed_curve(const Potential& target, int n,
                                 const std::vector<double>& tau_grid,
                                 std::uint64_t reps, std::uint64_t seed,
                                 unsigned threads) {
  if (tau_grid.empty()) throw ConfigError("tau grid must be nonempty");
  if (n < 1) throw ConfigError("n must be >= 1");
  SpeedCurve curve;
  const double I = target.fisher_info;
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    const double tau = tau_grid[k];
    const double scale = tau / std::sqrt(static_cast<double>(n));

    struct Acc {
      RunningStat jump, acc;
      void merge(const Acc& o) {
        jump.merge(o.jump);
        acc.merge(o.acc);
      }
    };
    Acc total = parallel_reduce<Acc>(
        reps, threads, 2048, [&](std::uint64_t r, Acc& a) {
          // Per-tau stream family; replica index is the low word.
          Philox rng(seed, stream_id(salt::kSpeedCurve + (k << 8), r));
          const double log_u = std::log(rng.uniform01());
          KahanSum sum;
          double w1 = 0.0;
          for (int i = 0; i < n; ++i) {
            const double xi = target.sample(rng);
            const double wi = rng.normal();
            if (i == 0) w1 = wi;
            sum.add(target.phi_diff(xi, scale * wi));
          }
          const double lr = sum.value();
          const bool accepted = log_u < lr;
          const double d1 = accepted ? scale * w1 : 0.0;
          a.jump.add(static_cast<double>(n) * d1 * d1);
          a.acc.add(lr >= 0.0 ? 1.0 : std::exp(lr));
        });

    SpeedRow row;
    row.tau = tau;
    row.esjd = total.jump.mean();
    row.esjd_se = total.jump.stderr_mean();
    row.asymptote = speed(tau, I);
    row.acc = total.acc.mean();
    row.acc_se = total.acc.stderr_mean();
    if (curve.rows.empty() || row.esjd > curve.rows[curve.argmax].esjd) {
      curve.argmax = k;
    }
    curve.rows.push_back(row);
  }
  return curve;
}

}  // namespace mhscale
