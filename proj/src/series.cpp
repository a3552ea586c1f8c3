#include "cbmdlab/series.hpp"

#include <cmath>

#include "cbmdlab/numeric.hpp"

namespace cbmdlab {

std::size_t LcuSeries::main_count() const {
    std::size_t n = 0;
    for (const auto& t : terms) {
        if (t.kind == TermKind::main) ++n;
    }
    return n;
}

bool LcuSeries::has_aux() const {
    for (const auto& t : terms) {
        if (t.kind != TermKind::main) return true;
    }
    return false;
}

void LcuSeries::refresh_totals() {
    std::vector<double> mags;
    mags.reserve(terms.size());
    max_abs_k = 0.0;
    for (const auto& t : terms) {
        if (t.kind != TermKind::main) continue;
        mags.push_back(std::abs(t.coeff));
        max_abs_k = std::max(max_abs_k, std::abs(t.k_param));
    }
    total_weight = pairwise_sum(mags);
}

}  // namespace cbmdlab
