// Fast-converging LCU series from the lattice-plus-auxiliary pole layout:
// parameter selection, coefficients, the three error groups, and numerical
// verification of the underlying series identity.
#pragma once

#include "cbmdlab/generator.hpp"
#include "cbmdlab/series.hpp"

namespace cbmdlab::cbmd {

// m auxiliary line poles on each side of the imaginary axis (2m+1 at r+i plus
// one at 2i), lattice density a (poles at Z/a), main sum truncated at |k| <= K.
struct CbmdParams {
    int m{1};
    double a{1.0};
    long long K{2};
    double epsilon1{1e-3};

    void validate() const;
};

struct ErrorBounds {
    double trunc;     // |k| > K tail of the lattice sum
    double aux_2i;    // single 2i-pole term
    double aux_line;  // 2m+1 line-pole terms
};

// Smallest parameter set whose three error groups each evaluate to at most
// epsilon1/3; m and a follow the closed-form constraints, K widens from 2ma
// until the (exactly evaluated) truncation bound clears its share.
CbmdParams select_parameters(double eta_max, double epsilon1);

// The three error-group bounds, each evaluated in log space.
ErrorBounds error_bounds(const CbmdParams& p, double eta_max);

// Main-lattice coefficients c_k at k_param = k/a for |k| <= K; with include_aux
// also the 2m+2 auxiliary pole terms (verification only, kind-tagged).
LcuSeries build_series(const CbmdParams& p, bool include_aux = false);

// Norm of (target - main sum - auxiliary groups); bounded by the truncation
// group whenever L(t) is PSD and eta_max <= 2pi a.
double verify_identity(const GeneratorSpec& gen, const CbmdParams& p, int steps);

struct ProductInequalityCheck {
    // product over r<=m of (r^2 + c^2)/r^2 against [1, sinh(pi c)/(pi c)]
    double ratio_plus;
    bool plus_lower_ok;
    bool plus_upper_ok;
    // product over r<=m of (r^2 - c^2)/r^2 against [sin(pi c)/(pi c), 1]; only
    // defined for 0 <= c <= 1
    double ratio_minus;
    bool minus_lower_ok;
    bool minus_upper_ok;
    bool minus_applicable;
};

ProductInequalityCheck product_inequality_check(int m, double c);

struct WeightBoundCheck {
    double weight;       // sum |c_k| over main terms
    double proof_bound;  // explicit O(1) chain evaluated at the same K, a
    bool ok;
};

WeightBoundCheck weight_bound_check(const LcuSeries& series, const CbmdParams& p);

}  // namespace cbmdlab::cbmd
