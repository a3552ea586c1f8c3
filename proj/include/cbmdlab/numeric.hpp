// Small numeric helpers: deterministic pairwise summation and log-space products.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace cbmdlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Pairwise (cascade) summation over [lo, hi). Deterministic for a fixed element
// order and better conditioned than a running sum.
template <typename T>
T pairwise_sum_range(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 1) return v[lo];
    if (n == 2) return v[lo] + v[lo + 1];
    const std::size_t mid = lo + n / 2;
    return pairwise_sum_range(v, lo, mid) + pairwise_sum_range(v, mid, hi);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v, T zero) {
    if (v.empty()) return zero;
    return pairwise_sum_range(v, 0, v.size());
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0.0); }

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(v, std::complex<double>(0.0, 0.0));
}

// Product of complex factors accumulated as a sum of principal logs. Magnitudes
// that would overflow or underflow a running product stay representable; the
// imaginary part only matters mod 2pi, which exp() restores.
class LogComplexProduct {
  public:
    void mul(std::complex<double> z) { log_sum_ += std::log(z); }
    void div(std::complex<double> z) { log_sum_ -= std::log(z); }
    void mul_log(std::complex<double> log_z) { log_sum_ += log_z; }
    void div_log(std::complex<double> log_z) { log_sum_ -= log_z; }
    std::complex<double> log_value() const { return log_sum_; }
    std::complex<double> value() const { return std::exp(log_sum_); }

  private:
    std::complex<double> log_sum_{0.0, 0.0};
};

// log(e^w - 1) for Re(w) > 0, stable against overflow of e^w.
inline std::complex<double> log_expm1_pos(std::complex<double> w) {
    return w + std::log(1.0 - std::exp(-w));
}

// log(e^x - 1) for real x > 0.
inline double log_expm1_pos(double x) { return x + std::log1p(-std::exp(-x)); }

inline double log_factorial(long long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace cbmdlab
