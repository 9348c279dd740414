#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mhscale/errors.hpp"
#include "mhscale/potential.hpp"
#include "mhscale/stats.hpp"

using namespace mhscale;

TEST_CASE("fisher information of the standard gaussian is 1") {
  Potential p = make_gaussian(1.0);
  CHECK(fisher_information(p) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("gaussian family satisfies I sigma^2 = 1") {
  for (double sigma : {0.5, 1.0, 2.0}) {
    Potential p = make_gaussian(sigma);
    const double I = fisher_information(p);
    CHECK(I * sigma * sigma == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("closed-form fisher informations of the bounded-score targets") {
  Potential t = make_tanh();
  CHECK(fisher_information(t) == doctest::Approx(0.5).epsilon(1e-8));
  Potential l = make_logistic();
  CHECK(fisher_information(l) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("fisher information ignores normalization shifts") {
  Potential p = make_gaussian(1.0);
  const double base = fisher_information(p);
  Potential shifted = p;
  shifted.phi = [](double x) { return -0.5 * x * x + 7.25; };
  shifted.log_norm_known = false;
  const double with_shift = fisher_information(shifted);
  CHECK(std::abs(with_shift - base) < 1e-10);
}

TEST_CASE("non-normalizable potentials raise the divergence signal") {
  Potential bad = make_gaussian(1.0);
  bad.phi = [](double) { return 0.0; };  // flat: not integrable
  bad.phi_prime = [](double) { return 0.0; };
  bad.log_norm_known = false;
  CHECK_THROWS_AS(fisher_information(bad), DivergentIntegralError);
}

TEST_CASE("gaussian regularity passes at k = 1 and fails at k = 0.5") {
  Potential p = make_gaussian(1.0);
  p.holder_gamma = 0.5;
  p.holder_alpha = 1.0;
  p.holder_k = 1.0;
  RegularityReport rep = check_regularity(p);
  CHECK(rep.holder_pass);
  CHECK(rep.holder_max_ratio <= 1.0 + 1e-9);
  CHECK(rep.lipschitz_pass);

  p.holder_k = 0.5;
  rep = check_regularity(p);
  CHECK_FALSE(rep.holder_pass);
  // Witness: at |v| = 1 the ratio is exactly 1 > 0.5.
  CHECK(rep.holder_max_ratio > 0.5);
  CHECK(std::abs(p.phi_prime(rep.holder_witness_x + rep.holder_witness_v) -
                 p.phi_prime(rep.holder_witness_x)) >
        0.5 * std::max(std::pow(std::abs(rep.holder_witness_v), 0.5),
                       std::abs(rep.holder_witness_v)));
}

TEST_CASE("gaussian passes for every gamma in (0,1), alpha >= 1 at k = 1") {
  for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double alpha : {1.0, 1.5, 2.0}) {
      Potential p = make_gaussian(1.0);
      p.holder_gamma = gamma;
      p.holder_alpha = alpha;
      p.holder_k = 1.0;
      CHECK(check_regularity(p).holder_pass);
    }
  }
}

TEST_CASE("tanh target is 1-Lipschitz in the score") {
  Potential p = make_tanh();
  GridConfig dense;
  dense.nx = 321;
  dense.nv = 321;
  const RegularityReport rep = check_regularity(p, dense);
  CHECK(rep.holder_pass);
  CHECK(rep.lipschitz_pass);
  CHECK(rep.lipschitz_max_ratio <= 1.0 + 1e-9);
}

TEST_CASE("analytic cdfs match quadrature of the density") {
  for (Potential p : {make_gaussian(1.3), make_tanh(), make_logistic()}) {
    for (double x : {0.3, 1.0, 2.5}) {
      const double analytic = p.central_mass(x);
      Potential q = p;
      q.cdf = nullptr;  // force the quadrature route
      CHECK(q.central_mass(x) == doctest::Approx(analytic).epsilon(1e-9));
    }
  }
}

TEST_CASE("spline target reproduces a tabulated gaussian") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 400; ++i) {
    const double x = -10.0 + 20.0 * i / 400.0;
    xs.push_back(x);
    ys.push_back(-0.5 * x * x);
  }
  Potential p = make_spline(xs, ys);
  CHECK(p.fisher_info == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(p.log_norm == doctest::Approx(0.91893853320467274).epsilon(1e-3));
  CHECK(p.phi_prime(0.7) == doctest::Approx(-0.7).epsilon(1e-3));
  CHECK_FALSE(p.has_exact_sampler());
}

TEST_CASE("spline loader enforces the file contract") {
  const char* path = "/tmp/mhscale_spline_test.csv";
  {
    std::ofstream f(path);
    f << "x,phi\n";
    for (int i = 0; i <= 200; ++i) {
      const double x = -8.0 + 16.0 * i / 200.0;
      f << x << "," << -0.5 * x * x << "\n";
    }
  }
  Potential p = load_spline_csv(path);
  CHECK(p.fisher_info == doctest::Approx(1.0).epsilon(5e-3));

  const char* bad = "/tmp/mhscale_spline_bad.csv";
  {
    std::ofstream f(bad);
    f << "0,0\n0,-1\n";  // not strictly increasing
  }
  CHECK_THROWS_AS(load_spline_csv(bad), ConfigError);
  std::remove(path);
  std::remove(bad);
}

TEST_CASE("target parser round-trips the catalogue names") {
  CHECK(parse_target("gaussian(2)").fisher_info == doctest::Approx(0.25));
  CHECK(parse_target("tanh").fisher_info == doctest::Approx(0.5));
  CHECK(parse_target("logistic").fisher_info == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(parse_target("cauchy"), ConfigError);
  CHECK_THROWS_AS(parse_target("gaussian"), ConfigError);
}
