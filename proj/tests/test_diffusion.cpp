#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mhscale/clt.hpp"
#include "mhscale/diffusion.hpp"
#include "mhscale/errors.hpp"
#include "mhscale/scaling.hpp"
#include "mhscale/stats.hpp"

using namespace mhscale;

namespace {

const Potential kGauss = make_gaussian(1.0);

SdeConfig sde_cfg(double tau, Potential target, double dt, double horizon) {
  return SdeConfig{tau, std::move(target), dt, horizon, 1e6};
}

}  // namespace

TEST_CASE("coefficient identity: diffusion^2 = 2 drift / phi'") {
  for (double tau : {0.7, 1.0, 2.38}) {
    for (const Potential& p : {make_gaussian(1.0), make_tanh()}) {
      SdeConfig cfg = sde_cfg(tau, p, 1e-3, 1.0);
      const SdeCoefficients c = sde_coefficients(cfg);
      for (double u : {-2.0, -0.5, 0.3, 1.7}) {
        const double lhs = c.diffusion() * c.diffusion();
        const double rhs = 2.0 * c.drift(u) / p.phi_prime(u);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("tau = 0 freezes the path") {
  SdeConfig cfg = sde_cfg(0.0, kGauss, 1e-2, 1.0);
  Philox rng(5, 0);
  const SdePath path = simulate_sde(cfg, 0.37, rng);
  for (double u : path.u) CHECK(u == 0.37);
}

TEST_CASE("blow-up guard aborts divergent drifts") {
  Potential bad = make_gaussian(1.0);
  bad.phi = [](double x) { return 0.5 * x * x; };
  bad.phi_prime = [](double x) { return x; };  // repelling drift
  bad.fisher_info = 1.0;
  SdeConfig cfg = sde_cfg(2.0, bad, 0.5, 1e4);
  cfg.blowup_bound = 1e3;
  Philox rng(5, 0);
  CHECK_THROWS_AS(simulate_sde(cfg, 1.0, rng), NonFiniteValueError);
}

TEST_CASE("stationary variance of the gaussian limit is 1") {
  SdeConfig cfg = sde_cfg(1.0, kGauss, 1e-3, 1000.0);
  Philox rng(9, 0);
  const SdePath path = simulate_sde(cfg, kGauss.sample(rng), rng);
  // Batch means over 100 segments absorb the path autocorrelation.
  const std::size_t batch = path.u.size() / 100;
  RunningStat seg;
  for (std::size_t b = 0; b + 1 < 100; ++b) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < batch; ++i) {
      const double u = path.u[b * batch + i];
      s2 += u * u;
    }
    seg.add(s2 / batch);
  }
  CHECK(std::abs(seg.mean() - 1.0) <= std::max(0.05, 3.0 * seg.stderr_mean()));
}

TEST_CASE("weak error halves with the step (Richardson self-consistency)") {
  // Couple dt, dt/2, dt/4 through shared fine increments; E[U_T^2] then
  // shows the first-order bias pattern |e(dt)-e(dt/2)| ~ 2 |e(dt/2)-e(dt/4)|.
  const double tau = 2.38, T = 10.0, dt = 0.2;
  RunningStat d01, d12;
  Philox rng(77, 0);
  const int paths = 4000;
  const int fine_steps = int(T / dt) * 4;
  std::vector<double> z4(fine_steps), z2(fine_steps / 2), z1(fine_steps / 4);
  for (int p = 0; p < paths; ++p) {
    const double u0 = kGauss.sample(rng);
    for (auto& z : z4) z = rng.normal();
    for (int i = 0; i < fine_steps / 2; ++i) {
      z2[i] = (z4[2 * i] + z4[2 * i + 1]) * 0.7071067811865475244;
    }
    for (int i = 0; i < fine_steps / 4; ++i) {
      z1[i] = (z2[2 * i] + z2[2 * i + 1]) * 0.7071067811865475244;
    }
    const double u_dt = euler_path(sde_cfg(tau, kGauss, dt, T), u0, z1).u.back();
    const double u_h2 =
        euler_path(sde_cfg(tau, kGauss, dt / 2, T), u0, z2).u.back();
    const double u_h4 =
        euler_path(sde_cfg(tau, kGauss, dt / 4, T), u0, z4).u.back();
    d01.add(u_dt * u_dt - u_h2 * u_h2);
    d12.add(u_h2 * u_h2 - u_h4 * u_h4);
  }
  const double e01 = std::abs(d01.mean());
  const double e12 = std::abs(d12.mean());
  CHECK(e01 <= 2.0 * e12 + 3.0 * (d01.stderr_mean() + 2.0 * d12.stderr_mean()));
  CHECK(e01 >= 3.0 * d01.stderr_mean());  // the bias is actually resolved
}

TEST_CASE("sde invariance: long-run law matches pi (gaussian and tanh)") {
  for (const Potential& p : {make_gaussian(1.0), make_tanh()}) {
    SdeConfig cfg = sde_cfg(2.38, p, 2e-3, 4.0);  // one sample per segment
    const int per_path = 5000;
    std::vector<double> xs;
    xs.reserve(4 * per_path);
    for (int path = 0; path < 4; ++path) {
      Philox rng(123, 400 + path);
      double u = p.sample(rng);
      for (int s = 0; s < per_path; ++s) {
        u = simulate_sde(cfg, u, rng).u.back();
        xs.push_back(u);
      }
    }
    std::sort(xs.begin(), xs.end());
    const double d = ks_distance(xs, [&](double x) { return p.cdf(x); });
    CHECK(d < ks_critical_5pct(xs.size()));
  }
}

TEST_CASE("rescaled first coordinate basics") {
  // n = 1: the path is the raw chain coordinate at every proposal.
  ChainConfig cfg{1, 1.0, kGauss, 15, 0};
  const CoordPath path = rescaled_first_coordinate(cfg, 200.0, 1);
  CHECK(path.value.size() == 201);
  CHECK(path.time_step == 1.0);

  // Marginal stays pi and lag-0 autocovariance is Var_pi(X1). Thinned to 2
  // rescaled time units so the retained samples are near-independent; the
  // mean bound is ~3.5 sigma for an OU-like path of this length.
  ChainConfig big{50, 2.38, kGauss, 16, 0};
  const CoordPath p2 = rescaled_first_coordinate(big, 2000.0, 100);
  std::vector<double> xs(p2.value.begin(), p2.value.end());
  RunningStat st;
  for (double v : xs) st.add(v);
  CHECK(std::abs(st.mean()) < 0.1);
  CHECK(st.variance() == doctest::Approx(1.0).epsilon(0.15));
  std::sort(xs.begin(), xs.end());
  const double d = ks_distance(xs, [&](double x) { return kGauss.cdf(x); });
  CHECK(d < 1.5 * ks_critical_5pct(xs.size()));
}

TEST_CASE("semigroup distance: identity at t = 0 and contraction bound") {
  ChainConfig cfg{20, 2.38, kGauss, 71, 0};
  SdeConfig sde = sde_cfg(2.38, kGauss, 1e-2, 1.0);
  const CylinderFunction h = make_bump(1.0);
  const std::vector<double> ts{0.0, 0.5};
  const auto rows = semigroup_distance(h, ts, cfg, 24, 32, sde);
  REQUIRE(rows.size() == 2);
  // Both semigroups are the identity at t = 0.
  CHECK(rows[0].rms <= 1e-12);
  // Markov contraction: distance never exceeds 2 sup|h|.
  for (const auto& r : rows) CHECK(r.rms <= 2.0 * h.sup_norm + 1e-9);
}

TEST_CASE("semigroup distance improves from n = 10 to n = 200") {
  const CylinderFunction h = make_bump(1.0);
  SdeConfig sde = sde_cfg(2.38, kGauss, 5e-3, 0.5);
  const std::vector<double> ts{0.5};
  ChainConfig c10{10, 2.38, kGauss, 81, 0};
  ChainConfig c200{200, 2.38, kGauss, 81, 0};
  const auto r10 = semigroup_distance(h, ts, c10, 96, 128, sde);
  const auto r200 = semigroup_distance(h, ts, c200, 96, 128, sde);
  const double budget = 3.0 * (r10[0].msd_se + r200[0].msd_se) +
                        r10[0].sde_bias + r200[0].sde_bias;
  CHECK(r10[0].msd - r200[0].msd > budget);
}

TEST_CASE("autocorrelations: lag 0 is 1; chain matches sde at n = 1000") {
  ChainConfig cfg{1000, 2.38, kGauss, 91, 0};
  SdeConfig sde = sde_cfg(2.38, kGauss, 2e-3, 25.0);
  const std::vector<double> lags{0.0, 1.0};
  const auto rows = autocorrelation_compare(cfg, sde, lags, 16);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].chain == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[0].sde == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rows[1].chain - rows[1].sde) <=
        3.0 * std::hypot(rows[1].chain_se, rows[1].sde_se));
}

TEST_CASE("slower speeds mean higher autocorrelation, in the right order") {
  // speed(1.0) = 0.617 < speed(4.0) = 0.728 < speed(2.38) = 1.326, so the
  // lag-1 autocorrelation must order the other way around.
  SdeConfig sde1 = sde_cfg(1.0, kGauss, 2e-3, 30.0);
  const std::vector<double> lags{1.0};
  std::vector<double> acfs;
  for (double tau : {1.0, 4.0, 2.38}) {
    ChainConfig cfg{200, tau, kGauss, 95, 0};
    SdeConfig sde = sde_cfg(tau, kGauss, 2e-3, 30.0);
    const auto rows = autocorrelation_compare(cfg, sde, lags, 16);
    acfs.push_back(rows[0].chain);
  }
  CHECK(acfs[0] > acfs[2]);  // tau = 1 mixes slowest of the three
  CHECK(acfs[1] > acfs[2]);  // tau = 4 still slower than the optimum
}
