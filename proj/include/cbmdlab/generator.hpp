// Problem generators A(t) = L(t) + iH(t), their spectral profiles, and the
// time-ordered exponential that evaluates every evolution in the series.
#pragma once

#include <vector>

#include "cbmdlab/matrix.hpp"

namespace cbmdlab {

enum class GenKind { constant, time_sampled };

// A(t) on [0, T], either constant or sampled on a strictly increasing grid with
// entrywise piecewise-linear interpolation between samples.
struct GeneratorSpec {
    GenKind kind{GenKind::constant};
    double T{1.0};
    Matrix A;                    // constant kind
    std::vector<double> times;   // time_sampled kind, times.front() == 0, times.back() == T
    std::vector<Matrix> samples; // time_sampled kind, one matrix per grid point

    static GeneratorSpec constant(Matrix a, double horizon);
    static GeneratorSpec sampled(std::vector<double> grid, std::vector<Matrix> values);

    Eigen::Index dim() const;
    std::size_t grid_size() const { return kind == GenKind::constant ? 2 : times.size(); }
    double grid_time(std::size_t i) const;
    const Matrix& grid_sample(std::size_t i) const;

    void validate() const;
};

enum class QuadRule { trapezoid, midpoint };

// The scalar summaries of a generator: eigenvalue extremes of L(t) on the grid,
// their time integrals, the spectral range and the norm ceiling of A(t).
struct SpectralProfile {
    double alpha_A{0.0};
    std::vector<double> alpha_min_t;
    std::vector<double> alpha_max_t;
    double eta_min{0.0};
    double eta_max{0.0};
    double alpha_d{0.0};
    double rho_L{0.0};
    double gamma_min{1.0};
    double gamma_max{1.0};
};

SpectralProfile spectral_profile(const GeneratorSpec& gen, QuadRule rule = QuadRule::trapezoid);

// U(z) = T-ordered exp of integral of (-iH(s) - zL(s)) ds over [0, T], evaluated
// with the second-order exponential-midpoint product rule. z = i*k/a reproduces
// the Hermitian-generated unitaries of the lattice series; z = 1 is the target
// propagator T-exp(-integral A).
Matrix time_ordered_exp(const GeneratorSpec& gen, Complex multiplier, int steps);

// Appendix-style ceiling on ||T-exp(integral of (iH + zL))||: exp(Re z * eta_max)
// for Re z >= 0, exp(Re z * eta_min) otherwise.
double evolution_norm_bound(Complex z, const SpectralProfile& profile);

// Step count keeping every midpoint factor below unit norm for all multipliers
// with |z| <= max_abs_multiplier (piecewise-linear interpolation cannot exceed
// the endpoint norms).
int min_safe_steps(const GeneratorSpec& gen, double max_abs_multiplier);

}  // namespace cbmdlab
