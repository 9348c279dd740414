#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mhscale {

// Streaming mean/variance (Welford) with a parallel merge, so blockwise
// reductions give the same answer in any execution order that preserves the
// merge sequence.
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningStat& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;        // unbiased sample variance
  double stderr_mean() const;     // sqrt(variance / n)

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Compensated (Kahan) accumulator for long sums of same-scale terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Standard normal distribution function, accurate to ~1e-16 via erfc.
double normal_cdf(double x);

// Standard normal quantile (Acklam rational approximation plus one Halley
// refinement against erfc); relative error below 1e-14 on (0,1).
double normal_quantile(double p);

// Upper tail P(chi^2_n > x) through the regularized incomplete gamma.
double chi2_tail(double dof, double x);

// The chi^2 Chernoff bound ((c/n) e^{-(c/n-1)})^{n/2} for thresholds c > n.
double chi2_chernoff_bound(double n, double c);

// One-sample Kolmogorov-Smirnov distance of `sorted_samples` against a CDF.
template <class Cdf>
double ks_distance(std::span<const double> sorted_samples, Cdf&& cdf) {
  const std::size_t m = sorted_samples.size();
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double F = cdf(sorted_samples[i]);
    const double lo = F - static_cast<double>(i) / static_cast<double>(m);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(m) - F;
    if (lo > d) d = lo;
    if (hi > d) d = hi;
  }
  return d;
}

// 5%-level asymptotic KS critical value, 1.3581/sqrt(m).
double ks_critical_5pct(std::size_t m);

}  // namespace mhscale
