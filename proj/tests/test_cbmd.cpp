#include <cmath>
#include <complex>

#include "doctest.h"
#include "support.hpp"

#include "cbmdlab/cbmd.hpp"
#include "cbmdlab/generator.hpp"
#include "cbmdlab/numeric.hpp"
#include "cbmdlab/rng.hpp"

using namespace cbmdlab;
using namespace cbmdlab::cbmd;

namespace {

// Scalar brute-force sum of main terms for the problem A = lambda, horizon T.
Complex scalar_main_sum(const LcuSeries& s, Complex lambda, double tfin) {
    const double l = lambda.real();
    const double h = lambda.imag();
    std::vector<Complex> pieces;
    for (const auto& t : s.terms) {
        if (t.kind != TermKind::main) continue;
        pieces.push_back(t.coeff * std::exp(-kI * (h + t.k_param * l) * tfin));
    }
    return pairwise_sum(pieces);
}

Complex coefficient_sum_all(const LcuSeries& s) {
    std::vector<Complex> cs;
    for (const auto& t : s.terms) cs.push_back(t.coeff);
    return pairwise_sum(cs);
}

}  // namespace

TEST_CASE("select_parameters reproduces the closed-form pole count") {
    // (1/2) ln(3 sinh(2pi)/(pi eps)) = 7.377... at eps = 1e-4, so the ceiling is 8
    const auto p = select_parameters(0.0, 1e-4);
    const double half_log = 0.5 * std::log(3.0 * std::sinh(2.0 * kPi) / (kPi * 1e-4));
    CHECK(p.m == static_cast<int>(std::ceil(half_log)));
    CHECK(p.m == 8);
    CHECK(static_cast<double>(p.K) / p.a >= 2.0 * p.m);
    CHECK(static_cast<double>(p.K) / p.a <= 2.0 * p.m + 1.0);

    const auto b = error_bounds(p, 0.0);
    CHECK(b.trunc <= 1e-4 / 3.0);
    CHECK(b.aux_2i <= 1e-4 / 3.0);
    CHECK(b.aux_line <= 1e-4 / 3.0);
}

TEST_CASE("select_parameters keeps every error group below a third of epsilon1") {
    for (const double eps1 : {0.5, 1e-2, 1e-3, 1e-5, 1e-7}) {
        for (const double eta : {0.0, 1.0, 5.0}) {
            const auto p = select_parameters(eta, eps1);
            const auto b = error_bounds(p, eta);
            CHECK(b.trunc <= eps1 / 3.0);
            CHECK(b.aux_2i <= eps1 / 3.0);
            CHECK(b.aux_line <= eps1 / 3.0);
            CHECK(p.a >= eta / (2.0 * kPi));
        }
    }
    CHECK_THROWS_AS(select_parameters(0.0, 0.0), InvalidTolerance);
    CHECK_THROWS_AS(select_parameters(0.0, 1.5), InvalidTolerance);
}

TEST_CASE("error_bounds truncation group matches direct evaluation at m=7, K/a=14") {
    const CbmdParams p{7, 1.0, 14, 1e-4};
    const auto b = error_bounds(p, 0.0);

    // direct (non-log) evaluation: sinh(2pi) (7!)^2 / (7^15 pi^2)
    const double fact7 = 5040.0;
    const double direct = std::sinh(2.0 * kPi) * fact7 * fact7 / (std::pow(7.0, 15) * kPi * kPi);
    CHECK(b.trunc == doctest::Approx(direct).epsilon(1e-12));
    // the Stirling form sinh(2pi)/(pi e^{2m}) underestimates by ~2.05x here
    CHECK(b.trunc <= 2.1 * std::sinh(2.0 * kPi) / (kPi * std::exp(14.0)));
    CHECK(b.trunc >= std::sinh(2.0 * kPi) / (kPi * std::exp(14.0)));
}

TEST_CASE("error bounds vanish monotonically in their driving parameters") {
    // the two pole groups decay with the lattice density a (m fixed, K/a held valid)
    double prev_2i = 1e300, prev_line = 1e300;
    for (const double a : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const CbmdParams p{5, a, static_cast<long long>(std::ceil(10.0 * a)), 1e-3};
        const auto b = error_bounds(p, 1.0);
        CHECK(b.aux_2i < prev_2i);
        CHECK(b.aux_line < prev_line);
        prev_2i = b.aux_2i;
        prev_line = b.aux_line;
    }
    // the truncation group decays as the cut K/a moves out
    double prev_t = 1e300;
    for (const long long k : {10, 14, 20, 40, 80}) {
        const CbmdParams p{5, 1.0, k, 1e-3};
        const auto b = error_bounds(p, 1.0);
        CHECK(b.trunc < prev_t);
        prev_t = b.trunc;
    }
}

TEST_CASE("build_series enforces the parameter invariants") {
    CHECK_THROWS_AS(build_series(CbmdParams{0, 1.0, 4, 1e-2}, false), Error);
    CHECK_THROWS_AS(build_series(CbmdParams{2, 1.0, 1, 1e-2}, false), Error);  // K/a < 2m
    CHECK_THROWS_AS(build_series(CbmdParams{171, 1.0, 400, 1e-2}, false), ParamTooLarge);
}

TEST_CASE("all coefficients including auxiliary groups sum to one (L = 0 collapse)") {
    for (const double eps1 : {1e-3, 1e-5, 1e-7}) {
        const auto p = select_parameters(0.0, eps1);
        const auto s = build_series(p, /*include_aux=*/true);
        CHECK(s.terms.size() == s.main_count() + 2 * p.m + 2);
        const Complex total = coefficient_sum_all(s);
        CHECK(std::abs(total - 1.0) <= eps1);
    }
}

TEST_CASE("scalar brute-force sum hits e^{-1} within epsilon1") {
    const auto p = select_parameters(0.0, 1e-4);
    const auto s = build_series(p, false);
    CHECK(s.main_count() == static_cast<std::size_t>(2 * p.K + 1));
    const Complex sum = scalar_main_sum(s, Complex(1.0, 0.0), 1.0);
    CHECK(std::abs(sum - std::exp(-1.0)) <= 1e-4);
    CHECK(std::exp(-1.0) == doctest::Approx(0.367879441).epsilon(1e-9));
}

TEST_CASE("parameters selected for eta_max = 10 solve the matching diagonal problem") {
    const auto p = select_parameters(10.0, 1e-3);
    CHECK(p.a >= 10.0 / (2.0 * kPi));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 10.0;
    d(1, 1) = 5.0;
    const auto gen = GeneratorSpec::constant(d, 1.0);
    const auto s = build_series(p, false);
    const HermitianSplit sp = hermitian_split(d);

    // operator error of the truncated main sum against the exact propagator
    std::vector<Matrix> pieces;
    for (const auto& t : s.terms) {
        pieces.push_back(t.coeff * expm(-kI * (sp.H + t.k_param * sp.L) * 1.0));
    }
    const Matrix approx = pairwise_sum(pieces, Matrix(Matrix::Zero(2, 2)));
    const Matrix exact = expm(-d);
    CHECK(spectral_norm(approx - exact) <= 1e-3);
}

TEST_CASE("verify_identity: scalar problem closes to the requested tolerance") {
    Matrix one(1, 1);
    one(0, 0) = 1.0;
    const auto gen = GeneratorSpec::constant(one, 1.0);
    const auto p = select_parameters(0.0, 1e-6);
    const int steps = min_safe_steps(gen, 2.0 * p.m + 2.0);
    CHECK(verify_identity(gen, p, steps) <= 1e-6);
}

TEST_CASE("verify_identity: L = 0 collapse keeps residual and coefficient sum tight") {
    Rng rng(19);
    const Matrix h = testsupport::bounded_hermitian(rng, 3, 1.0);
    const auto gen = GeneratorSpec::constant(kI * h, 1.0);
    const double eps1 = 1e-5;
    const auto p = select_parameters(0.0, eps1);
    const int steps = min_safe_steps(gen, 2.0 * p.m + 2.0);
    CHECK(verify_identity(gen, p, steps) <= eps1);
    const auto s = build_series(p, true);
    CHECK(std::abs(coefficient_sum_all(s) - 1.0) <= eps1);
}

TEST_CASE("verify_identity: random PSD-dissipation generators at 1e-5") {
    Rng rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        const Matrix h = testsupport::bounded_hermitian(rng, 4, 1.0);
        const Matrix l = testsupport::bounded_psd(rng, 4, 1.0);
        Matrix a = l + kI * h;
        const double nrm = spectral_norm(a);
        if (nrm > 2.0) a *= 2.0 / nrm;
        const auto gen = GeneratorSpec::constant(a, 1.0);

        const auto profile = spectral_profile(gen);
        const auto p = select_parameters(profile.eta_max, 1e-5);
        const int steps = min_safe_steps(gen, 2.0 * p.m + 2.0);
        const double residual = verify_identity(gen, p, steps);
        CHECK(residual <= 1e-5);
        CHECK(residual <= error_bounds(p, profile.eta_max).trunc + 1e-9);
    }
}

TEST_CASE("verify_identity rejects non-PSD dissipation") {
    Matrix a(2, 2);
    a << 1.0, 5.0, 0.0, 1.0;  // L has a negative eigenvalue
    const auto gen = GeneratorSpec::constant(a, 1.0);
    const auto p = select_parameters(0.0, 1e-3);
    CHECK_THROWS_AS(verify_identity(gen, p, 64), HypothesisViolation);
}

TEST_CASE("truncated main sum meets the Thm-2 style operator error contract") {
    Rng rng(31);
    const Matrix h = testsupport::bounded_hermitian(rng, 3, 0.8);
    const Matrix l = testsupport::bounded_psd(rng, 3, 0.8);
    const Matrix a = l + kI * h;
    const HermitianSplit sp = hermitian_split(a);
    const Matrix exact = expm(-a);
    const auto profile = spectral_profile(GeneratorSpec::constant(a, 1.0));

    for (const double eps1 : {1e-2, 1e-4, 1e-6}) {
        const auto p = select_parameters(profile.eta_max, eps1);
        const auto s = build_series(p, false);
        std::vector<Matrix> pieces;
        for (const auto& t : s.terms) {
            pieces.push_back(t.coeff * expm(-kI * (sp.H + t.k_param * sp.L)));
        }
        const Matrix approx = pairwise_sum(pieces, Matrix(Matrix::Zero(3, 3)));
        CHECK(spectral_norm(approx - exact) <= eps1);
    }
}

TEST_CASE("product inequalities on worked examples") {
    auto r = product_inequality_check(1, 1.0);
    CHECK(r.ratio_plus == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.plus_lower_ok);
    CHECK(r.plus_upper_ok);
    CHECK(std::sinh(kPi) / kPi == doctest::Approx(3.67607791).epsilon(1e-8));

    r = product_inequality_check(5, 0.0);
    CHECK(r.ratio_plus == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.ratio_minus == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.plus_lower_ok);
    CHECK(r.plus_upper_ok);
    CHECK(r.minus_lower_ok);
    CHECK(r.minus_upper_ok);

    r = product_inequality_check(20, 0.5);
    CHECK(r.minus_applicable);
    CHECK(r.ratio_minus >= std::sin(kPi * 0.5) / (kPi * 0.5) - 1e-12);
    CHECK(r.ratio_minus <= 1.0);
}

TEST_CASE("product inequalities hold across the full acceptance grid") {
    for (int m = 1; m <= 30; ++m) {
        for (int ci = 0; ci <= 20; ++ci) {
            const double c = 5.0 * ci / 20.0;
            const auto r = product_inequality_check(m, c);
            CHECK(r.plus_lower_ok);
            CHECK(r.plus_upper_ok);
            if (c <= 1.0) {
                CHECK(r.minus_applicable);
                CHECK(r.minus_lower_ok);
                CHECK(r.minus_upper_ok);
            }
        }
    }
}

TEST_CASE("total weight stays under the explicit proof bound") {
    for (const double eps1 : {1e-2, 1e-4, 1e-6}) {
        const auto p = select_parameters(0.0, eps1);
        const auto s = build_series(p, false);
        const auto w = weight_bound_check(s, p);
        CHECK(w.ok);
        CHECK(w.weight <= w.proof_bound);
    }
}

TEST_CASE("proof bound plateaus below 130 for any lattice density >= 1") {
    for (const double a : {1.0, 2.0, 5.0, 20.0, 100.0}) {
        const CbmdParams p{3, a, static_cast<long long>(std::ceil(6.0 * a)), 1e-2};
        const auto s = build_series(p, false);
        const auto w = weight_bound_check(s, p);
        CHECK(w.proof_bound <= 130.0);
    }
}

TEST_CASE("weight varies by less than 2x across the tolerance sweep") {
    double wmin = 1e300, wmax = 0.0;
    for (const double eps1 : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        const auto p = select_parameters(0.0, eps1);
        const auto s = build_series(p, false);
        const auto w = weight_bound_check(s, p);
        CHECK(w.ok);
        wmin = std::min(wmin, w.weight);
        wmax = std::max(wmax, w.weight);
    }
    CHECK(wmax / wmin < 2.0);
}

TEST_CASE("total weight is summation-order independent at 1e-13") {
    const auto p = select_parameters(0.0, 1e-5);
    auto s = build_series(p, false);
    const double forward = s.total_weight;
    std::reverse(s.terms.begin(), s.terms.end());
    s.refresh_totals();
    CHECK(std::abs(forward - s.total_weight) <= 1e-13);
}

TEST_CASE("max |k'| and term count follow the advertised scalings") {
    double prev_max_k = 0.0;
    double cmin = 1e300, cmax = 0.0;
    for (const double eps1 : {1e-2, 1e-4, 1e-8}) {
        const auto p = select_parameters(0.0, eps1);
        const auto s = build_series(p, false);
        CHECK(s.max_abs_k <= 2.0 * p.m + 1.0);
        // max |k'| grows by at most a constant factor per 100x tolerance drop
        if (prev_max_k > 0.0) CHECK(s.max_abs_k / prev_max_k <= 4.0);
        prev_max_k = s.max_abs_k;

        const double lg = std::log(1.0 / eps1);
        const double c = static_cast<double>(s.main_count()) / (lg * lg);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    CHECK(cmax / cmin <= 4.0);  // term count tracks log^2(1/eps) within a factor 4
}
