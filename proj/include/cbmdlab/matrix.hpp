// Dense complex matrix primitives: Hermitian splitting, spectral norms and the
// scaling-and-squaring matrix exponential used as the constant-case propagator.
#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "cbmdlab/errors.hpp"

namespace cbmdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

bool all_finite(const Matrix& m);

// Throws InvalidMatrix unless m is square with finite entries.
void require_square_finite(const Matrix& m, const char* what);

struct HermitianSplit {
    Matrix H;  // coherent part, Hermitian
    Matrix L;  // dissipative part, Hermitian
};

// A = L + iH with L = (A + A†)/2 and H = (A - A†)/(2i).
HermitianSplit hermitian_split(const Matrix& a);

// Largest singular value, via the eigendecomposition of M†M.
double spectral_norm(const Matrix& m);

// {min, max} eigenvalues of a Hermitian matrix.
std::pair<double, double> hermitian_eig_extremes(const Matrix& hermitian);

// e^M by [6/6] diagonal Pade with the argument scaled to spectral norm <= 0.5.
// Refuses ||M|| > 1e3 (NormTooLarge) instead of losing precision silently.
Matrix expm(const Matrix& m);

}  // namespace cbmdlab
