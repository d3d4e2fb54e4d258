#pragma once

#include <map>
#include <utility>

#include "stringforge/coupling.hpp"
#include "stringforge/genfun.hpp"

namespace stringforge {

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unique series solution with u = O(t), z = x + O(t) of the leading-order
// string equations [h^0]V'(h+u+zh^-1) = 0, [h^-1]V'(h+u+zh^-1) = x, by
// fixed-point iteration to total coupling degree = order. Numeric couplings
// are computed symbolically; substitute them at output with
// apply_numeric_couplings.
std::pair<CouplingSeries, CouplingSeries> leading_order_series(const Potential& V,
                                                               int order);

CouplingSeries apply_numeric_couplings(const Potential& V, const CouplingSeries& s);

// residuals of the two leading equations (zero to truncation order for a
// correct solution)
std::pair<CouplingSeries, CouplingSeries> leading_order_residual(
    const Potential& V, const CouplingSeries& u, const CouplingSeries& z);

// Substitutes coupling series for the jets of u and z (and x) in a
// valence-independent expression.
CouplingSeries evaluate(const DiffExpr& e, const CouplingSeries& u,
                        const CouplingSeries& z);
CouplingSeries evaluate(const LogCombo& e, const CouplingSeries& u,
                        const CouplingSeries& z);

// F^0 as the termwise double antiderivative of log(z/x).
CouplingSeries f0_series(const CouplingSeries& u, const CouplingSeries& z,
                         int order);

// F^g series for a potential: g = 0 integral form, g = 1, 2 the verified
// closed forms, g >= 3 the double antiderivative of the Bernoulli relation.
CouplingSeries f_series(int g, const Potential& V, GenusTable& table,
                        OperatorTable& ops, int order);

// (prod n_j!) * coefficient of prod (-t_j)^(n_j), split by the face-count
// exponent of x. Counts labeled maps.
struct MapCountReport {
    std::map<int, Rational> by_faces;
    Rational total;
};
MapCountReport map_count(const CouplingSeries& F, const std::map<int, int>& profile);

// Independent route for the low-order coefficients: the string equations
// assembled directly in coupling-series arithmetic over Motzkin paths, solved
// order by order in N^-1 (no string-polynomial table, no jet solver).
struct SeriesSolution {
    CouplingSeries u1, z1, u2;
    // residuals of the four assembled equations after substitution
    bool residuals_zero = false;
};
SeriesSolution solve_string_equations_series(const Potential& V,
                                             const CouplingSeries& u,
                                             const CouplingSeries& z);

}  // namespace stringforge
