#include "stringforge/phipsi.hpp"

#include <mutex>
#include <vector>

#include "stringforge/laurent.hpp"

namespace stringforge {

namespace {
DiffExpr U(unsigned k) { return DiffExpr::jet(VarBase::U, k); }
DiffExpr Z(unsigned k) { return DiffExpr::jet(VarBase::Z, k); }
}  // namespace

Poly discriminant_poly() {
    Poly zp = Poly::var(make_var(VarBase::Z, 1));
    Poly z = Poly::var(make_var(VarBase::Z, 0));
    Poly up = Poly::var(make_var(VarBase::U, 1));
    return zp * zp - z * up * up;
}

DiffExpr discriminant() { return DiffExpr(discriminant_poly()); }

const PhiPsiPair& phi_psi(int m) {
    static std::mutex mu;
    static std::vector<PhiPsiPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) cache.push_back({DiffExpr(), DiffExpr::x(), 0});
    while (static_cast<int>(cache.size()) <= m) {
        const PhiPsiPair& prev = cache.back();
        DiffExpr dphi = prev.phi.d_x();
        DiffExpr dpsi = prev.psi.d_x();
        DiffExpr D = discriminant();
        PhiPsiPair next;
        next.m = prev.m + 1;
        next.phi = (-(Z(0) * U(1)) * dphi + Z(1) * dpsi) / D;
        next.psi = (Z(0) * Z(1) * dphi - Z(0) * U(1) * dpsi) / D;
        cache.push_back(std::move(next));
    }
    return cache[m];
}

bool check_unwinding(int m) {
    const PhiPsiPair& cur = phi_psi(m);
    const PhiPsiPair& prev = phi_psi(m - 1);
    bool first = Z(1) * cur.phi + U(1) * cur.psi == prev.psi.d_x();
    bool second = Z(0) * U(1) * cur.phi + Z(1) * cur.psi == Z(0) * prev.phi.d_x();
    return first && second;
}

std::pair<CouplingSeries, CouplingSeries> phi_psi_explicit(
    const Potential& V, int m, const CouplingSeries& u, const CouplingSeries& z) {
    int trunc = std::min(u.truncation(), z.truncation());
    if (u.truncation() != z.truncation())
        throw std::invalid_argument("phi_psi_explicit: truncation mismatch");
    // V^(m+1)(y) = d^(m+1)/dy^(m+1) [ y^2/2 + sum_j t_j y^j ]
    // powers of Y = h + u + z h^-1 up to degree - m - 1
    LaurentPoly<CouplingSeries> acc;
    CouplingSeries one(Rational(1), trunc);
    LaurentPoly<CouplingSeries> Y =
        LaurentPoly<CouplingSeries>::monom(1, one) +
        LaurentPoly<CouplingSeries>::monom(0, u) +
        LaurentPoly<CouplingSeries>::monom(-1, z);
    std::vector<LaurentPoly<CouplingSeries>> ypow;
    ypow.push_back(LaurentPoly<CouplingSeries>::monom(0, one));
    for (int k = 1; k <= V.degree; ++k) ypow.push_back(ypow.back() * Y);

    auto falling = [](int j, int k) {
        Rational f(1);
        for (int i = 0; i < k; ++i) f *= Rational(j - i);
        return f;
    };
    // Gaussian part
    if (m + 1 == 1)
        acc += ypow[1];
    else if (m + 1 == 2)
        acc += ypow[0];
    for (const auto& [j, val] : V.couplings) {
        if (j - m - 1 < 0) continue;
        CouplingSeries tj = val ? CouplingSeries(*val, trunc)
                                : CouplingSeries::coupling(j, trunc);
        LaurentPoly<CouplingSeries> term = ypow[j - m - 1];
        CouplingSeries scale = tj * falling(j, m + 1);
        LaurentPoly<CouplingSeries> scaled;
        for (const auto& [k, c] : term.coeffs()) scaled.add_term(k, c * scale);
        acc += scaled;
    }
    return {acc.coeff(0), acc.coeff(-1)};
}

}  // namespace stringforge
