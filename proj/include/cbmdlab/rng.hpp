// Counter-based deterministic RNG (splitmix64 core). Output depends only on the
// key and call order, never on libstdc++ distribution internals, so catalog
// problems and CSV sweeps reproduce bit-for-bit across platforms.
#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

#include "cbmdlab/matrix.hpp"
#include "cbmdlab/numeric.hpp"

namespace cbmdlab {

class Rng {
  public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    // Derive an independent stream; splitting keeps parallel consumers deterministic.
    Rng split(std::uint64_t index) const { return Rng(mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ULL))); }

    Rng split(std::string_view name) const {
        std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
        for (const char c : name) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 1099511628211ULL;
        }
        return split(h);
    }

    std::uint64_t next_u64() { return mix(key_ ^ mix(++counter_)); }

    double uniform() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {  // Box-Muller, hand-rolled for cross-platform determinism
        const double u1 = std::max(uniform(), 0x1.0p-60);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    Matrix matrix(Eigen::Index n) {
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_normal();
        return m;
    }

    Matrix hermitian(Eigen::Index n) {
        const Matrix m = matrix(n);
        return 0.5 * (m + m.adjoint());
    }

    Matrix psd(Eigen::Index n) {
        const Matrix m = matrix(n);
        return (m.adjoint() * m) / static_cast<double>(n);
    }

    Vector vector(Eigen::Index n) {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
        return v;
    }

    Vector unit_vector(Eigen::Index n) {
        Vector v = vector(n);
        return v / v.norm();
    }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_{0};
};

}  // namespace cbmdlab
