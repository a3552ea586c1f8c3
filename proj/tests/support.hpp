// Shared test oracles. These stay independent of the library code paths they
// check: Taylor series for the exponential, direct Horner for polynomials, and
// an explicit ancilla-register construction for the LCU protocol.
#pragma once

#include <complex>
#include <vector>

#include "cbmdlab/matrix.hpp"
#include "cbmdlab/rng.hpp"

namespace testsupport {

using cbmdlab::Complex;
using cbmdlab::Matrix;
using cbmdlab::Vector;

// Plain 200-term Taylor sum; trustworthy for ||M|| up to ~5.
inline Matrix taylor_expm(const Matrix& m, int terms = 200) {
    Matrix acc = Matrix::Identity(m.rows(), m.cols());
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    for (int k = 1; k <= terms; ++k) {
        term = (term * m / static_cast<double>(k)).eval();
        acc += term;
    }
    return acc;
}

// p(M) by direct power accumulation (not Horner, so it differs from the library path).
inline Matrix poly_apply_direct(const std::vector<Complex>& coeffs, const Matrix& m) {
    Matrix acc = coeffs[0] * Matrix::Identity(m.rows(), m.cols());
    Matrix power = Matrix::Identity(m.rows(), m.cols());
    for (std::size_t d = 1; d < coeffs.size(); ++d) {
        power = (power * m).eval();
        acc += coeffs[d] * power;
    }
    return acc;
}

// Random Hermitian matrix with a prescribed spectral-norm ceiling.
inline Matrix bounded_hermitian(cbmdlab::Rng& rng, Eigen::Index n, double max_norm) {
    Matrix h = rng.hermitian(n);
    const double nrm = cbmdlab::spectral_norm(h);
    if (nrm > max_norm) h *= max_norm / nrm;
    return h;
}

inline Matrix bounded_psd(cbmdlab::Rng& rng, Eigen::Index n, double max_norm) {
    Matrix l = rng.psd(n);
    const double nrm = cbmdlab::spectral_norm(l);
    if (nrm > max_norm) l *= max_norm / nrm;
    return l;
}

// Any unitary whose first column equals v (Gram-Schmidt completion).
inline Matrix unitary_with_first_column(const Vector& v) {
    const Eigen::Index n = v.size();
    Matrix q(n, n);
    q.col(0) = v / v.norm();
    Eigen::Index basis = 0;
    for (Eigen::Index j = 1; j < n; ++j) {
        Vector cand;
        double nrm = 0.0;
        while (nrm < 0.5 && basis < n) {
            cand = Vector::Unit(n, basis++);
            for (Eigen::Index k = 0; k < j; ++k) cand -= q.col(k).dot(cand) * q.col(k);
            nrm = cand.norm();
        }
        q.col(j) = cand / nrm;
    }
    return q;
}

}  // namespace testsupport
