#include "cbmdlab/matrix.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace cbmdlab {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex v = m(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
    }
    return true;
}

void require_square_finite(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InvalidMatrix(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!all_finite(m)) {
        throw InvalidMatrix(std::string(what) + ": matrix has non-finite entries");
    }
}

HermitianSplit hermitian_split(const Matrix& a) {
    require_square_finite(a, "hermitian_split");
    HermitianSplit s;
    s.L = 0.5 * (a + a.adjoint());
    s.H = (a - a.adjoint()) / (2.0 * kI);
    // Kill roundoff asymmetry so downstream self-adjoint solvers see exact inputs.
    s.L = 0.5 * (s.L + s.L.adjoint()).eval();
    s.H = 0.5 * (s.H + s.H.adjoint()).eval();
    return s;
}

double spectral_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("spectral_norm: eigensolver failed");
    }
    const double lam = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(lam, 0.0));
}

std::pair<double, double> hermitian_eig_extremes(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("hermitian_eig_extremes: eigensolver failed");
    }
    const auto& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

Matrix expm(const Matrix& m) {
    require_square_finite(m, "expm");
    const Eigen::Index n = m.rows();
    const double norm = spectral_norm(m);
    if (norm > 1e3) {
        throw NormTooLarge("expm: spectral norm " + std::to_string(norm) + " exceeds 1e3");
    }

    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    const Matrix x = m / std::ldexp(1.0, squarings);

    // [6/6] diagonal Pade of e^x; with ||x|| <= 0.5 the truncation error is
    // below double precision.
    static const double b[7] = {1.0,       1.0 / 2.0,     5.0 / 44.0,   1.0 / 66.0,
                                1.0 / 792, 1.0 / 15840.0, 1.0 / 665280.0};
    const Matrix id = Matrix::Identity(n, n);
    const Matrix x2 = x * x;
    const Matrix x4 = x2 * x2;
    const Matrix x6 = x4 * x2;
    const Matrix even = b[0] * id + b[2] * x2 + b[4] * x4 + b[6] * x6;
    const Matrix odd = x * (b[1] * id + b[3] * x2 + b[5] * x4);
    // numerator N = even + odd, denominator D = even - odd; solve D R = N.
    Matrix r = (even - odd).partialPivLu().solve(even + odd);
    for (int i = 0; i < squarings; ++i) r = (r * r).eval();
    return r;
}

}  // namespace cbmdlab
