// The finite LCU series shared by the CBMD and LCHS kernel builders.
#pragma once

#include <vector>

#include "cbmdlab/matrix.hpp"

namespace cbmdlab {

enum class TermKind { main, aux_line, aux_2i };

// One series term: the evolution it multiplies is T-exp(-i integral (H + mult L)).
// Main terms have a real multiplier k/a (a Hermitian effective Hamiltonian);
// auxiliary terms carry the complex pole multipliers and exist only so the full
// identity can be verified — they are never fed to the LCU emulator.
struct LcuTerm {
    Complex coeff;
    double k_param{0.0};  // k/a for main terms
    Complex multiplier;   // equals k_param for main; r+i or 2i for aux kinds
    TermKind kind{TermKind::main};
};

struct LcuSeries {
    std::vector<LcuTerm> terms;
    double total_weight{0.0};  // sum |coeff| over main terms
    double max_abs_k{0.0};     // max |k_param| over main terms

    std::size_t main_count() const;
    bool has_aux() const;
    // Recompute total_weight / max_abs_k from the terms (deterministic pairwise sum).
    void refresh_totals();
};

}  // namespace cbmdlab
