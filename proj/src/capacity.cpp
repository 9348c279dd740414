#include "mhscale/capacity.hpp"

#include <cmath>

#include "mhscale/clt.hpp"
#include "mhscale/errors.hpp"
#include "mhscale/parallel.hpp"
#include "mhscale/stats.hpp"

namespace mhscale {

NestLevel nest_level(const Potential& target, int n, int ell, double tol) {
  if (n < 1 || ell < 1) throw ConfigError("n and ell must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  const double mass_target =
      std::exp(-1.0 / (static_cast<double>(n) * ell * static_cast<double>(ell)));

  double lo = 0.0, hi = 1.0;
  while (target.central_mass(hi) < mass_target) {
    hi *= 2.0;
    if (hi > 1e12) throw DivergentIntegralError("quantile search did not bracket");
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    const double m = target.central_mass(mid);
    if (std::abs(m - mass_target) < tol) {
      lo = hi = mid;
      break;
    }
    (m < mass_target ? lo : hi) = mid;
  }
  NestLevel lvl;
  lvl.n = n;
  lvl.ell = ell;
  lvl.quantile = 0.5 * (lo + hi);
  lvl.k_value = std::max(static_cast<double>(n) * ell, lvl.quantile);
  return lvl;
}

std::vector<NestLevel> nest_levels(const Potential& target, int n, int L,
                                   double tol) {
  std::vector<NestLevel> out;
  out.reserve(static_cast<std::size_t>(L));
  for (int ell = 1; ell <= L; ++ell) out.push_back(nest_level(target, n, ell, tol));
  return out;
}

double shell_b(double x, double k) {
  const double a = std::abs(x);
  if (a < k) return 0.0;
  const double denom = 2.0 * k - a;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (a - k) / denom;
}

double u_n_eval(std::span<const double> x, std::span<const NestLevel> levels) {
  if (x.size() > levels.size()) {
    throw DimensionError("more coordinates than nest levels");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double b = shell_b(x[i], levels[i].k_value);
    if (std::isinf(b)) return 1.0;
    s += b;
  }
  return s / (1.0 + s);
}

NestBound capacity_bound(const Potential& target, double tau, int n, int L,
                         std::uint64_t reps, std::uint64_t seed, unsigned threads,
                         double tol) {
  if (L < 1) throw ConfigError("L must be >= 1");
  const double c = c_of_tau(tau, target.fisher_info);

  // Partial sum of 1/l^2 and its exact tail.
  KahanSum hsum;
  for (int ell = 1; ell <= L; ++ell) {
    hsum.add(1.0 / (static_cast<double>(ell) * ell));
  }
  const double pi2_6 = 1.6449340668482264365;
  const double tail = std::max(0.0, pi2_6 - hsum.value());
  if (tail / n > 1e-3) {
    throw TruncationError(
        "truncation too small: neglected mass sum_{l>L} 1/(n l^2) exceeds 1e-3");
  }

  const std::vector<NestLevel> levels = nest_levels(target, n, L, tol);

  NestBound b;
  b.n = n;
  b.L = L;
  b.l2_bound = -std::expm1(-(hsum.value() + tail) / n);
  KahanSum gsum;
  for (const auto& lvl : levels) gsum.add(1.0 / (lvl.k_value * lvl.k_value));
  b.grad_sum_bound = gsum.value() + tail / (static_cast<double>(n) * n);
  b.form_bound = 0.5 * tau * tau * c * b.grad_sum_bound;
  b.form_bound_alt = 0.5 * tau * c * b.grad_sum_bound;
  b.total = b.l2_bound + b.form_bound;

  if (reps > 0) {
    struct Acc {
      RunningStat u2, grad;
      void merge(const Acc& o) {
        u2.merge(o.u2);
        grad.merge(o.grad);
      }
    };
    Acc mc = parallel_reduce<Acc>(
        reps, threads, 256, [&](std::uint64_t r, Acc& acc) {
          Philox rng(seed, stream_id(salt::kCapacity, r));
          // One pass: s = sum of shell terms plus per-coordinate derivative
          // contributions; s = inf collapses u to 1 with zero gradient.
          double s = 0.0;
          bool inf = false;
          thread_local std::vector<double> db2;
          db2.clear();
          for (const auto& lvl : levels) {
            const double xi = target.sample(rng);
            const double a = std::abs(xi);
            const double k = lvl.k_value;
            if (a >= 2.0 * k) {
              inf = true;
              continue;  // keep consuming draws so streams stay aligned
            }
            if (a >= k) {
              const double denom = 2.0 * k - a;
              s += (a - k) / denom;
              const double db = k / (denom * denom);
              db2.push_back(db * db);
            }
          }
          if (inf) {
            acc.u2.add(1.0);
            acc.grad.add(0.0);
            return;
          }
          const double u = s / (1.0 + s);
          acc.u2.add(u * u);
          const double damp = (1.0 + s) * (1.0 + s);
          double grad_sum = 0.0;
          for (double d2 : db2) grad_sum += d2 / (damp * damp);
          acc.grad.add(grad_sum);
        });
    b.mc_l2 = mc.u2.mean();
    b.mc_l2_se = mc.u2.stderr_mean();
    b.mc_grad_sum = mc.grad.mean();
    b.mc_grad_se = mc.grad.stderr_mean();
    b.mc_form = 0.5 * tau * tau * c * b.mc_grad_sum;
    b.mc_form_se = 0.5 * tau * tau * c * b.mc_grad_se;
    b.l2_ok = b.mc_l2 <= b.l2_bound + 3.0 * b.mc_l2_se;
    b.grad_ok = b.mc_grad_sum <= b.grad_sum_bound + 3.0 * b.mc_grad_se;
  }
  return b;
}

}  // namespace mhscale
