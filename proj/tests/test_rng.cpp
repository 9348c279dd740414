#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhscale/rng.hpp"
#include "mhscale/stats.hpp"

using namespace mhscale;

TEST_CASE("philox4x64-10 known-answer vectors") {
  // Frozen against the reference implementation's raw output.
  const auto b0 = Philox::block({1, 2}, {0, 0, 0, 0});
  CHECK(b0[0] == 0x46fdf329c224985eULL);
  CHECK(b0[1] == 0x49ebd8a28e9ec134ULL);
  CHECK(b0[2] == 0x528e3ef07e630d40ULL);
  CHECK(b0[3] == 0x69a57877b5c520c8ULL);

  const auto b1 = Philox::block({1, 2}, {1, 0, 0, 0});
  CHECK(b1[0] == 0x4f2f4313b5536b09ULL);
  CHECK(b1[1] == 0x5b617be3219ff32aULL);
  CHECK(b1[2] == 0x097293476f9275cbULL);
  CHECK(b1[3] == 0xf63f3bf4962c3942ULL);

  const auto b2 = Philox::block({0, 0}, {1, 0, 0, 0});
  CHECK(b2[0] == 0x02f4ba6408e4d89bULL);
  CHECK(b2[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(b2[2] == 0x1c8667a55d902e79ULL);
  CHECK(b2[3] == 0x907d7a052fd5b4dcULL);
}

TEST_CASE("streams are deterministic and distinct") {
  Philox a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_equal_cross = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    const auto vb = b.next_u64();
    const auto vc = c.next_u64();
    all_equal = all_equal && va == vb;
    any_equal_cross = any_equal_cross || va == vc;
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_cross);
}

TEST_CASE("uniforms stay inside their ranges") {
  Philox rng(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform01_interior();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("normal moments at Monte Carlo scale") {
  Philox rng(11, 0);
  RunningStat st;
  const int m = 200000;
  for (int i = 0; i < m; ++i) st.add(rng.normal());
  CHECK(std::abs(st.mean()) < 3.0 * st.stderr_mean());
  CHECK(st.variance() == doctest::Approx(1.0).epsilon(0.02));

  // Tail mass beyond 1.96 sd, two-sided: 5%.
  Philox rng2(12, 0);
  int tail = 0;
  for (int i = 0; i < m; ++i) {
    if (std::abs(rng2.normal()) > 1.9599639845400542) ++tail;
  }
  const double frac = double(tail) / m;
  CHECK(frac == doctest::Approx(0.05).epsilon(0.05));
}
