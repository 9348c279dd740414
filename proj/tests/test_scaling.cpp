#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhscale/clt.hpp"
#include "mhscale/scaling.hpp"

using namespace mhscale;

TEST_CASE("speed endpoints and scale identity") {
  CHECK(speed(0.0, 1.0) == 0.0);
  CHECK(speed(100.0, 1.0) < 1e-10);
  for (double tau : {0.3, 1.0, 2.38, 6.0}) {
    for (double I : {0.25, 1.0, 4.0}) {
      CHECK(std::abs(speed(tau, I) - speed(tau * std::sqrt(I), 1.0) / I) <= 1e-12);
    }
  }
}

TEST_CASE("speed curve is unimodal on a dense scan") {
  // Rises to the single interior maximum, then falls.
  const int m = 10000;
  int sign_changes = 0;
  double prev = speed(20.0 * 1 / m, 1.0);
  bool increasing = true;
  for (int i = 2; i <= m; ++i) {
    const double s = speed(20.0 * i / m, 1.0);
    if (increasing && s < prev) {
      increasing = false;
      ++sign_changes;
    } else if (!increasing && s > prev + 1e-15) {
      ++sign_changes;
    }
    prev = s;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("optimizer finds the Goldilocks point") {
  const OptimalScaling opt = optimize_tau(1.0);
  CHECK(opt.acc_star == doctest::Approx(0.23381016133183664).epsilon(1e-6));
  CHECK(opt.tau_star == doctest::Approx(2.3812024966855406).epsilon(1e-6));
  CHECK(opt.speed_star == doctest::Approx(1.3257329182308112).epsilon(1e-9));

  // Returned value beats the bracket endpoints.
  CHECK(opt.speed_star >= speed(1e-6, 1.0));
  CHECK(opt.speed_star >= speed(20.0, 1.0));
}

TEST_CASE("tau_star scales like 1/sqrt(I); acc_star is universal") {
  const OptimalScaling ref = optimize_tau(1.0, 1e-10);
  for (double I : {0.25, 1.0, 4.0}) {
    const OptimalScaling opt = optimize_tau(I, 1e-10);
    CHECK(std::abs(opt.tau_star * std::sqrt(I) - ref.tau_star) <= 1e-6);
    CHECK(std::abs(opt.acc_star - ref.acc_star) <= 1e-6);
  }
}

TEST_CASE("empirical speed curve picks the optimum and the 0.234 rate") {
  const Potential g = make_gaussian(1.0);
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.38, 3.0, 4.0};
  const SpeedCurve curve = empirical_speed_curve(g, 1000, grid, 40000, 5);
  REQUIRE(curve.rows.size() == grid.size());
  CHECK(curve.rows[curve.argmax].tau == doctest::Approx(2.38));
  CHECK(curve.rows[curve.argmax].acc == doctest::Approx(0.234).epsilon(0.02 / 0.234));

  // ESJD at tau = 0.5 sits well below the optimum.
  const SpeedRow& low = curve.rows[0];
  const SpeedRow& top = curve.rows[curve.argmax];
  CHECK(top.esjd - low.esjd > 3.0 * std::hypot(top.esjd_se, low.esjd_se));

  // Each rung agrees with its asymptote at this n.
  for (const auto& r : curve.rows) {
    CHECK(std::abs(r.esjd - r.asymptote) <= 3.0 * r.esjd_se + 0.02 * r.asymptote);
  }
}
