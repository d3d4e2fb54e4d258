#pragma once

#include <utility>

#include "stringforge/coupling.hpp"
#include "stringforge/diffexpr.hpp"

namespace stringforge {

// The universal denominator D = (z')^2 - z (u')^2.
DiffExpr discriminant();
Poly discriminant_poly();

struct PhiPsiPair {
    DiffExpr phi, psi;
    int m = 0;
};

// Valence-independent auxiliary pair built by m applications of the matrix
// recurrence (1/D) [[-z u', z'], [z z', -z u']] d_x, from phi_0 = 0,
// psi_0 = x. Memoized per process.
const PhiPsiPair& phi_psi(int m);

// Exact truth of z' phi_m + u' psi_m = psi_{m-1}' and
// z u' phi_m + z' psi_m = z phi_{m-1}', m >= 1.
bool check_unwinding(int m);

// Potential-explicit pair: phi_m = [h^0] V^(m+1)(h + u + z h^-1),
// psi_m = [h^-1] V^(m+1)(h + u + z h^-1), as coupling series.
std::pair<CouplingSeries, CouplingSeries> phi_psi_explicit(
    const Potential& V, int m, const CouplingSeries& u, const CouplingSeries& z);

}  // namespace stringforge
