#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mhscale {

// Counter-based RNG (Philox4x64-10). Key is (seed, stream): replica r of an
// experiment gets its own stream and can be generated in any order, which is
// what makes parallel runs reproducible independently of thread scheduling.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

  static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 2> key,
                                            std::array<std::uint64_t, 4> ctr) {
    constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t M1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t W1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 p0 = static_cast<unsigned __int128>(M0) * ctr[0];
      const unsigned __int128 p1 = static_cast<unsigned __int128>(M1) * ctr[2];
      ctr = {static_cast<std::uint64_t>(p1 >> 64) ^ ctr[1] ^ key[0],
             static_cast<std::uint64_t>(p1),
             static_cast<std::uint64_t>(p0 >> 64) ^ ctr[3] ^ key[1],
             static_cast<std::uint64_t>(p0)};
      key[0] += W0;
      key[1] += W1;
    }
    return ctr;
  }

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buf_ = block(key_, ctr_);
      if (++ctr_[0] == 0) ++ctr_[1];  // 128-bit block counter
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a Box-Muller radius argument.
  double uniform01_open0() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform on the open interval (0,1); safe through unbounded quantiles.
  double uniform01_interior() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes exactly two words per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01_open0()));
    const double theta = 6.283185307179586476925286766559 * uniform01();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Derives a stream id so distinct experiment stages never collide on replicas.
constexpr std::uint64_t stream_id(std::uint64_t salt, std::uint64_t replica) {
  return (salt << 40) ^ replica;
}

// One salt per estimator keeps replica streams disjoint across experiments
// while replica r of the same estimator reuses its stream at every ladder
// rung (the common-random-number pairing).
namespace salt {
constexpr std::uint64_t kChain = 1;
constexpr std::uint64_t kCltPairs = 2;
constexpr std::uint64_t kMeanAcceptance = 3;
constexpr std::uint64_t kDiscreteForm = 4;
constexpr std::uint64_t kExpectation = 5;
constexpr std::uint64_t kChi2 = 7;
constexpr std::uint64_t kHoeffding = 8;
constexpr std::uint64_t kRemainder = 9;
constexpr std::uint64_t kSpeedCurve = 10;
constexpr std::uint64_t kSde = 11;
constexpr std::uint64_t kSemigroupOuter = 12;
constexpr std::uint64_t kSemigroupChain = 13;
constexpr std::uint64_t kSemigroupSde = 14;
constexpr std::uint64_t kAcfChain = 15;
constexpr std::uint64_t kAcfSde = 16;
constexpr std::uint64_t kCapacity = 17;
}  // namespace salt

}  // namespace mhscale
