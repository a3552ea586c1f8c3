// Entrywise contour quadrature of matrix-valued functions and the numerical
// check of the matrix residue theorem.
#pragma once

#include <functional>
#include <vector>

#include "cbmdlab/matrix.hpp"

namespace cbmdlab::contour {

using Sampler = std::function<Matrix(Complex)>;

enum class ContourKind { circle, rectangle, polyline };

// Closed, positively oriented path with a quadrature density. Circles place
// nodes at half-step angular offsets so lattice poles on the real axis are
// never sampled exactly.
struct ContourSpec {
    ContourKind kind{ContourKind::circle};
    Complex center;                 // circle
    double radius{1.0};             // circle
    Complex corner_a, corner_b;     // rectangle, any two opposite corners
    std::vector<Complex> vertices;  // polyline, closed implicitly
    int nodes_per_unit_length{256};

    static ContourSpec circle(Complex center, double radius, int nodes_per_unit_length = 256);
    static ContourSpec rectangle(Complex a, Complex b, int nodes_per_unit_length = 256);
    static ContourSpec polyline(std::vector<Complex> vertices, int nodes_per_unit_length = 256);

    void validate() const;
    double length() const;
    // Minimum distance from a point to the path (used to size residue circles).
    double distance_to(Complex p) const;
};

struct PoleSpec {
    Complex location;
    int order{1};  // simple poles only
};

// Composite-trapezoid quadrature of each matrix entry along the path.
Matrix integrate_contour(const Sampler& f, const ContourSpec& contour);

// (1/2pi i) times the integral over a small circle around the pole.
Matrix residue_at(const Sampler& f, const PoleSpec& pole, double radius,
                  int nodes_per_unit_length = 256);

struct ResidueCheck {
    Matrix lhs;       // contour integral
    Matrix rhs;       // 2pi i * sum of residues
    double residual;  // ||lhs - rhs||
};

// Integrates f over the contour and compares against 2pi i times the residues
// at the listed poles, each evaluated on its own safe small circle.
ResidueCheck verify_residue_theorem(const Sampler& f, const ContourSpec& contour,
                                    const std::vector<PoleSpec>& poles);

}  // namespace cbmdlab::contour
