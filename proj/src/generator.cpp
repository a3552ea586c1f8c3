#include "cbmdlab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbmdlab/numeric.hpp"

namespace cbmdlab {

GeneratorSpec GeneratorSpec::constant(Matrix a, double horizon) {
    GeneratorSpec g;
    g.kind = GenKind::constant;
    g.A = std::move(a);
    g.T = horizon;
    g.validate();
    return g;
}

GeneratorSpec GeneratorSpec::sampled(std::vector<double> grid, std::vector<Matrix> values) {
    GeneratorSpec g;
    g.kind = GenKind::time_sampled;
    g.times = std::move(grid);
    g.samples = std::move(values);
    g.T = g.times.empty() ? 0.0 : g.times.back();
    g.validate();
    return g;
}

Eigen::Index GeneratorSpec::dim() const {
    return kind == GenKind::constant ? A.rows() : samples.front().rows();
}

double GeneratorSpec::grid_time(std::size_t i) const {
    if (kind == GenKind::constant) return i == 0 ? 0.0 : T;
    return times[i];
}

const Matrix& GeneratorSpec::grid_sample(std::size_t i) const {
    if (kind == GenKind::constant) return A;
    return samples[i];
}

void GeneratorSpec::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidMatrix("GeneratorSpec: horizon T must be positive and finite");
    }
    if (kind == GenKind::constant) {
        require_square_finite(A, "GeneratorSpec");
        return;
    }
    if (samples.size() < 2) {
        throw InvalidMatrix("GeneratorSpec: time_sampled kind needs at least 2 samples");
    }
    if (times.size() != samples.size()) {
        throw InvalidMatrix("GeneratorSpec: times and samples sizes differ");
    }
    if (times.front() != 0.0 || times.back() != T) {
        throw InvalidMatrix("GeneratorSpec: grid must start at 0 and end at T");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw InvalidMatrix("GeneratorSpec: grid times must be strictly increasing");
        }
    }
    const Eigen::Index d = samples.front().rows();
    for (const Matrix& s : samples) {
        require_square_finite(s, "GeneratorSpec");
        if (s.rows() != d) throw InvalidMatrix("GeneratorSpec: samples must share one dimension");
    }
}

namespace {

// Integrate grid-point values f over [0, T] with the named rule. Midpoint values
// come from the caller via fmid (piecewise-linear interpolation of the source).
double integrate_grid(const std::vector<double>& t, const std::vector<double>& f,
                      const std::vector<double>& fmid, QuadRule rule) {
    std::vector<double> pieces;
    pieces.reserve(t.size() - 1);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double dt = t[i + 1] - t[i];
        if (rule == QuadRule::trapezoid) {
            pieces.push_back(0.5 * (f[i] + f[i + 1]) * dt);
        } else {
            pieces.push_back(fmid[i] * dt);
        }
    }
    return pairwise_sum(pieces);
}

}  // namespace

SpectralProfile spectral_profile(const GeneratorSpec& gen, QuadRule rule) {
    gen.validate();
    const std::size_t n = gen.grid_size();

    SpectralProfile p;
    p.alpha_min_t.resize(n);
    p.alpha_max_t.resize(n);
    std::vector<double> grid(n), width(n);
    std::vector<Matrix> lparts(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = gen.grid_time(i);
        const Matrix& a = gen.grid_sample(i);
        lparts[i] = hermitian_split(a).L;
        auto [lo, hi] = hermitian_eig_extremes(lparts[i]);
        p.alpha_min_t[i] = lo;
        p.alpha_max_t[i] = hi;
        width[i] = hi - lo;
        p.alpha_A = std::max(p.alpha_A, spectral_norm(a));
    }

    std::vector<double> mid_min(n - 1, 0.0), mid_max(n - 1, 0.0), mid_w(n - 1, 0.0);
    if (rule == QuadRule::midpoint) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Matrix lm = 0.5 * (lparts[i] + lparts[i + 1]);
            auto [lo, hi] = hermitian_eig_extremes(lm);
            mid_min[i] = lo;
            mid_max[i] = hi;
            mid_w[i] = hi - lo;
        }
    }

    p.eta_min = integrate_grid(grid, p.alpha_min_t, mid_min, rule);
    p.eta_max = integrate_grid(grid, p.alpha_max_t, mid_max, rule);
    p.rho_L = integrate_grid(grid, width, mid_w, rule);
    p.alpha_d = *std::max_element(width.begin(), width.end());
    p.gamma_min = std::exp(p.eta_min);
    p.gamma_max = std::exp(p.eta_max);
    return p;
}

namespace {

// H and L sampled on the generator grid, with piecewise-linear lookup.
struct SplitTrack {
    std::vector<double> t;
    std::vector<Matrix> H, L;

    void eval(double at, Matrix& h_out, Matrix& l_out) const {
        if (at <= t.front()) {
            h_out = H.front();
            l_out = L.front();
            return;
        }
        if (at >= t.back()) {
            h_out = H.back();
            l_out = L.back();
            return;
        }
        const auto it = std::upper_bound(t.begin(), t.end(), at);
        const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
        const double theta = (at - t[j]) / (t[j + 1] - t[j]);
        h_out = (1.0 - theta) * H[j] + theta * H[j + 1];
        l_out = (1.0 - theta) * L[j] + theta * L[j + 1];
    }
};

}  // namespace

Matrix time_ordered_exp(const GeneratorSpec& gen, Complex multiplier, int steps) {
    gen.validate();
    if (steps < 1) throw StepTooCoarse("time_ordered_exp: steps must be >= 1");
    const double dt = gen.T / steps;

    if (gen.kind == GenKind::constant) {
        const HermitianSplit s = hermitian_split(gen.A);
        const Matrix g = -kI * s.H - multiplier * s.L;
        if (spectral_norm(g) * dt > 1.0 + 1e-12) {
            throw StepTooCoarse("time_ordered_exp: single-step norm exceeds 1");
        }
        // The midpoint factors commute for a constant generator, so the product
        // collapses to one exponential.
        return expm(g * gen.T);
    }

    SplitTrack track;
    track.t = gen.times;
    track.H.resize(gen.samples.size());
    track.L.resize(gen.samples.size());
    for (std::size_t i = 0; i < gen.samples.size(); ++i) {
        HermitianSplit s = hermitian_split(gen.samples[i]);
        track.H[i] = std::move(s.H);
        track.L[i] = std::move(s.L);
    }

    const Eigen::Index d = gen.dim();
    Matrix u = Matrix::Identity(d, d);
    Matrix h(d, d), l(d, d);
    for (int n = 0; n < steps; ++n) {
        const double tm = (n + 0.5) * dt;
        track.eval(tm, h, l);
        const Matrix g = -kI * h - multiplier * l;
        if (spectral_norm(g) * dt > 1.0 + 1e-12) {
            throw StepTooCoarse("time_ordered_exp: single-step norm exceeds 1 at t=" +
                                std::to_string(tm));
        }
        u = (expm(g * dt) * u).eval();  // later times act on the left
    }
    return u;
}

double evolution_norm_bound(Complex z, const SpectralProfile& profile) {
    const double re = z.real();
    return re >= 0.0 ? std::exp(re * profile.eta_max) : std::exp(re * profile.eta_min);
}

int min_safe_steps(const GeneratorSpec& gen, double max_abs_multiplier) {
    gen.validate();
    double gmax = 0.0;
    for (std::size_t i = 0; i < gen.grid_size(); ++i) {
        const HermitianSplit s = hermitian_split(gen.grid_sample(i));
        gmax = std::max(gmax,
                        spectral_norm(s.H) + std::abs(max_abs_multiplier) * spectral_norm(s.L));
    }
    return std::max(1, static_cast<int>(std::ceil(gen.T * gmax / 0.9)));
}

}  // namespace cbmdlab
