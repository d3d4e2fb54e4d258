#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringforge/diffexpr.hpp"
#include "stringforge/phipsi.hpp"
#include "stringforge/stringpoly.hpp"

namespace stringforge {

struct MissingLowerGenus : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularPivot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solved asymptotic coefficients: z[g] and u[k] as expressions in the jets of
// u = u_0 and z = z_0. z[0], u[0] are the base symbols.
struct GenusTable {
    std::map<int, DiffExpr> z;
    std::map<int, DiffExpr> u;

    static GenusTable base() {
        GenusTable t;
        t.z[0] = DiffExpr::jet(VarBase::Z);
        t.u[0] = DiffExpr::jet(VarBase::U);
        return t;
    }
    const DiffExpr& z_at(int g) const;
    const DiffExpr& u_at(int k) const;
    std::string to_json() const;
};

// Cache of string operators shared by the solver; generates on demand.
class OperatorTable {
  public:
    explicit OperatorTable(FitOptions opts = {}) : opts_(opts) {}
    const OperatorPoly& get(const Partition& lambda, const Partition& eta, Variant v);

  private:
    FitOptions opts_;
    std::map<std::tuple<Partition, Partition, int>, OperatorPoly> cache_;
};

// Order-N^(-2g) coefficient of a string equation, affine in the top-genus
// unknowns: known + coeff_u * u_{2g} + coeff_z * z_g.
struct ContinuumEquation {
    DiffExpr known;
    DiffExpr coeff_u;
    DiffExpr coeff_z;
};

ContinuumEquation continuum_equation(int g, Variant v, const GenusTable& table,
                                     OperatorTable& ops);

// Leading-order (g = 0) string equations: variant A is phi_0 = 0, variant B
// is psi_0 = x; returned as the identically-zero residuals of the base table.
DiffExpr leading_order_equation(Variant v);

// Solves the order-N^(-2g) pair for (z_g, u_{2g}) and stores them (plus
// u_{2g-1} via the odd-index relation if absent). Requires all lower entries.
std::pair<DiffExpr, DiffExpr> solve_genus(int g, GenusTable& table,
                                          OperatorTable& ops);

// u_{2g+1} from the Bernoulli relation; needs u_k for k <= 2g.
DiffExpr odd_u(int g, const GenusTable& table);

// Full order-2g residual with the solved top-genus entries substituted back;
// identically zero for a correctly solved table.
DiffExpr residual(int g, Variant v, const GenusTable& table, OperatorTable& ops);

struct GradingReport {
    bool ok = true;
    std::vector<std::string> violations;
};

GradingReport grading_check(const GenusTable& table);

// u-jets set to zero (symmetric-potential specialization).
DiffExpr set_u_zero(const DiffExpr& e);

}  // namespace stringforge
