#include "cbmdlab/cbmd.hpp"

#include <cmath>
#include <string>

#include "cbmdlab/numeric.hpp"

namespace cbmdlab::cbmd {

namespace {

const double kLogSinh2Pi = std::log(std::sinh(2.0 * kPi));

// log of the complex product over r = -m..m of (x - r - i), paired (r, -r):
// (x-i) * prod_{r>=1} ((x-i)^2 - r^2).
Complex log_lattice_product(double x, int m) {
    const Complex xi = Complex(x, -1.0);
    Complex acc = std::log(xi);
    const Complex xi2 = xi * xi;
    for (int r = 1; r <= m; ++r) {
        acc += std::log(xi2 - static_cast<double>(r) * static_cast<double>(r));
    }
    return acc;
}

// log of prod over r = -m..m of (-r - 2i) = (-2i) * prod_{r>=1} (-(r^2 + 4)).
Complex log_pole_norm_product(int m) {
    Complex acc = std::log(Complex(0.0, -2.0));
    for (int r = 1; r <= m; ++r) {
        acc += std::log(Complex(-(static_cast<double>(r) * r + 4.0), 0.0));
    }
    return acc;
}

// log of prod over r = -m..m of (r + 2i) = (2i) * prod_{r>=1} (-(r^2 + 4)).
Complex log_pole_plus_product(int m) {
    Complex acc = std::log(Complex(0.0, 2.0));
    for (int r = 1; r <= m; ++r) {
        acc += std::log(Complex(-(static_cast<double>(r) * r + 4.0), 0.0));
    }
    return acc;
}

Complex main_coefficient(long long k, const CbmdParams& p) {
    const double x = static_cast<double>(k) / p.a;
    LogComplexProduct lp;
    lp.mul(Complex(std::expm1(-2.0 * kPi * p.a), 0.0));  // e^{-2pi a} - 1, negative real
    lp.div(Complex(p.a, 0.0));
    lp.div(2.0 * kPi * kI);
    lp.div(Complex(x, 1.0));                             // x + i
    lp.div_log(log_lattice_product(x, p.m));             // prod (x - r - i)
    lp.mul_log(log_pole_norm_product(p.m));              // / prod (-r - 2i)
    lp.div((Complex(x, -2.0)) / Complex(0.0, -3.0));     // (x - 2i)/(-3i)
    return lp.value();
}

Complex aux_line_coefficient(int r, const CbmdParams& p) {
    LogComplexProduct lp;
    lp.mul(Complex(0.0, -3.0));                          // -3i
    lp.mul(Complex(std::expm1(-2.0 * kPi * p.a), 0.0));
    if (((p.m + r) & 1) != 0) lp.mul(Complex(-1.0, 0.0));  // (-1)^{m+r}
    lp.mul_log(log_pole_plus_product(p.m));                // prod (r' + 2i)
    lp.div_log(log_expm1_pos(Complex(2.0 * kPi * p.a, -2.0 * kPi * r * p.a)));
    lp.div(Complex(static_cast<double>(r), -1.0));         // r - i
    lp.div(Complex(static_cast<double>(r), 2.0));          // r + 2i
    lp.div_log(Complex(log_factorial(p.m - r), 0.0));
    lp.div_log(Complex(log_factorial(p.m + r), 0.0));
    return lp.value();
}

Complex aux_2i_coefficient(const CbmdParams& p) {
    LogComplexProduct lp;
    lp.mul(Complex(std::expm1(-2.0 * kPi * p.a), 0.0));
    lp.div_log(Complex(log_expm1_pos(4.0 * kPi * p.a), 0.0));
    for (int r = -p.m; r <= p.m; ++r) {
        lp.div(Complex(static_cast<double>(r), -1.0));  // r - i
        lp.mul(Complex(static_cast<double>(r), 2.0));   // r + 2i
    }
    return lp.value();
}

}  // namespace

void CbmdParams::validate() const {
    if (m < 1) throw Error("CbmdParams: m must be >= 1");
    if (m > 170) throw ParamTooLarge("CbmdParams: m > 170 overflows log-space factorials");
    if (!(a > 0.0)) throw Error("CbmdParams: lattice density a must be positive");
    if (static_cast<double>(K) / a < 2.0 * m - 1e-9) {
        throw Error("CbmdParams: truncation must satisfy K/a >= 2m");
    }
    if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) {
        throw InvalidTolerance("CbmdParams: epsilon1 must lie in (0, 1)");
    }
}

ErrorBounds error_bounds(const CbmdParams& p, double eta_max) {
    p.validate();
    ErrorBounds b;
    const double ka = static_cast<double>(p.K) / p.a;
    b.trunc = std::exp(kLogSinh2Pi + 2.0 * log_factorial(p.m) -
                       (2.0 * p.m + 1.0) * std::log(ka - p.m) - 2.0 * std::log(kPi));
    b.aux_2i = std::exp(2.0 * eta_max + kLogSinh2Pi - std::log(kPi) -
                        log_expm1_pos(4.0 * kPi * p.a));
    b.aux_line =
        std::exp(eta_max - 2.0 * kPi * p.a + kLogSinh2Pi + 0.5 * std::log(static_cast<double>(p.m)));
    return b;
}

CbmdParams select_parameters(double eta_max, double epsilon1) {
    if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) {
        throw InvalidTolerance("select_parameters: epsilon1 must lie in (0, 1)");
    }
    if (!(eta_max >= 0.0) || !std::isfinite(eta_max)) {
        throw Error("select_parameters: eta_max must be finite and >= 0");
    }

    const double log_c = kLogSinh2Pi + std::log(3.0 / kPi) - std::log(epsilon1);
    const int m = static_cast<int>(std::ceil(0.5 * log_c));
    if (m > 170) throw ParamTooLarge("select_parameters: epsilon1 too small (m > 170)");

    // lattice density: the 2i-pole and line-pole groups each at most epsilon1/3,
    // plus the series hypothesis eta_max <= 2pi a. kSlack keeps the binding
    // constraint strictly below the boundary instead of one ulp above it.
    constexpr double kSlack = 1e-9;
    const double a_2i = (std::log1p(3.0 * std::exp(2.0 * eta_max) * std::sinh(2.0 * kPi) /
                                    (kPi * epsilon1)) +
                         kSlack) /
                        (4.0 * kPi);
    const double a_line =
        (eta_max + kLogSinh2Pi + std::log(3.0 * std::sqrt(static_cast<double>(m))) -
         std::log(epsilon1) + kSlack) /
        (2.0 * kPi);
    const double a = std::max({a_2i, a_line, eta_max / (2.0 * kPi)});

    CbmdParams p{m, a, static_cast<long long>(std::ceil(2.0 * m * a)), epsilon1};
    // the Stirling step behind the closed-form m is loose by a small constant;
    // widening K restores trunc <= epsilon1/3 while keeping K/a <= 2m + 1
    const long long k_step = std::max<long long>(1, static_cast<long long>(std::ceil(a / 4.0)));
    while (error_bounds(p, eta_max).trunc > epsilon1 / 3.0) {
        p.K += k_step;
        if (static_cast<double>(p.K) / p.a > 2.0 * m + 2.0) {
            throw NumericalFailure("select_parameters: truncation bound failed to close");
        }
    }
    return p;
}

LcuSeries build_series(const CbmdParams& p, bool include_aux) {
    p.validate();
    LcuSeries s;
    s.terms.reserve(2 * p.K + 1 + (include_aux ? 2 * p.m + 2 : 0));
    for (long long k = -p.K; k <= p.K; ++k) {
        LcuTerm t;
        t.coeff = main_coefficient(k, p);
        t.k_param = static_cast<double>(k) / p.a;
        t.multiplier = Complex(t.k_param, 0.0);
        t.kind = TermKind::main;
        s.terms.push_back(t);
    }
    if (include_aux) {
        for (int r = -p.m; r <= p.m; ++r) {
            LcuTerm t;
            t.coeff = aux_line_coefficient(r, p);
            t.multiplier = Complex(static_cast<double>(r), 1.0);  // pole r + i
            t.kind = TermKind::aux_line;
            s.terms.push_back(t);
        }
        LcuTerm t;
        t.coeff = aux_2i_coefficient(p);
        t.multiplier = Complex(0.0, 2.0);  // pole 2i
        t.kind = TermKind::aux_2i;
        s.terms.push_back(t);
    }
    s.refresh_totals();
    return s;
}

double verify_identity(const GeneratorSpec& gen, const CbmdParams& p, int steps) {
    p.validate();
    gen.validate();

    const auto profile = spectral_profile(gen);
    for (std::size_t i = 0; i < profile.alpha_min_t.size(); ++i) {
        if (profile.alpha_min_t[i] < -1e-10) {
            throw HypothesisViolation("verify_identity: L(t) is not PSD at grid point " +
                                      std::to_string(i));
        }
    }
    if (profile.eta_max > 2.0 * kPi * p.a + 1e-12) {
        throw HypothesisViolation("verify_identity: eta_max exceeds 2 pi a");
    }

    const Matrix target = time_ordered_exp(gen, Complex(1.0, 0.0), steps);
    const LcuSeries s = build_series(p, /*include_aux=*/true);

    std::vector<Matrix> pieces;
    pieces.reserve(s.terms.size());
    for (const auto& t : s.terms) {
        pieces.push_back(t.coeff * time_ordered_exp(gen, kI * t.multiplier, steps));
    }
    const Matrix zero = Matrix::Zero(target.rows(), target.cols());
    return spectral_norm(target - pairwise_sum(pieces, zero));
}

ProductInequalityCheck product_inequality_check(int m, double c) {
    if (m < 1) throw Error("product_inequality_check: m must be >= 1");
    if (c < 0.0) throw Error("product_inequality_check: c must be >= 0");

    ProductInequalityCheck out{};
    const double c2 = c * c;
    double log_plus = 0.0;
    for (int r = 1; r <= m; ++r) log_plus += std::log1p(c2 / (static_cast<double>(r) * r));
    out.ratio_plus = std::exp(log_plus);
    const double upper_plus = c == 0.0 ? 1.0 : std::sinh(kPi * c) / (kPi * c);
    out.plus_lower_ok = out.ratio_plus >= 1.0 - 1e-12;
    out.plus_upper_ok = out.ratio_plus <= upper_plus * (1.0 + 1e-12);

    out.minus_applicable = c <= 1.0;
    if (out.minus_applicable) {
        double prod = 1.0;
        for (int r = 1; r <= m; ++r) prod *= 1.0 - c2 / (static_cast<double>(r) * r);
        out.ratio_minus = prod;
        const double lower_minus = c == 0.0 ? 1.0 : std::sin(kPi * c) / (kPi * c);
        out.minus_lower_ok = prod >= lower_minus - 1e-12;
        out.minus_upper_ok = prod <= 1.0 + 1e-12;
    } else {
        out.ratio_minus = 0.0;
        out.minus_lower_ok = out.minus_upper_ok = true;
    }
    return out;
}

WeightBoundCheck weight_bound_check(const LcuSeries& series, const CbmdParams& p) {
    p.validate();
    WeightBoundCheck out{};
    out.weight = series.total_weight;

    std::vector<double> pieces;
    pieces.reserve(2 * p.K + 1);
    for (long long k = -p.K; k <= p.K; ++k) {
        const double x = static_cast<double>(k) / p.a;
        pieces.push_back(1.0 / (x * x + 1.0));
    }
    out.proof_bound =
        3.0 * std::sinh(2.0 * kPi) / (2.0 * kPi * kPi) * pairwise_sum(pieces) / p.a;
    out.ok = out.weight <= out.proof_bound * (1.0 + 1e-12);
    return out;
}

}  // namespace cbmdlab::cbmd
