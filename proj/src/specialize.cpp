#include "stringforge/specialize.hpp"

#include <array>
#include <functional>

#include "stringforge/laurent.hpp"
#include "stringforge/motzkin.hpp"

namespace stringforge {

namespace {

using CSeries = CouplingSeries;
using CLaurent = LaurentPoly<CSeries>;

CLaurent y_operand(const CSeries& u, const CSeries& z, int trunc) {
    return CLaurent::monom(1, CSeries(Rational(1), trunc)) +
           CLaurent::monom(0, u) + CLaurent::monom(-1, z);
}

// [h^0] and [h^-1] of V'(h + u + z h^-1)
std::pair<CSeries, CSeries> vprime_coeffs(const Potential& V, const CSeries& u,
                                          const CSeries& z, int trunc) {
    CLaurent Y = y_operand(u, z, trunc);
    std::vector<CLaurent> ypow{CLaurent::monom(0, CSeries(Rational(1), trunc))};
    for (int k = 1; k + 1 <= V.degree; ++k) ypow.push_back(ypow.back() * Y);
    CSeries h0 = u, hm1 = z;  // the gaussian part V' = lambda contributes Y itself
    for (const auto& [j, val] : V.couplings) {
        CSeries tj = val ? CSeries(*val, trunc) : CSeries::coupling(j, trunc);
        tj = tj * Rational(j);
        h0 += tj * ypow[j - 1].coeff(0);
        hm1 += tj * ypow[j - 1].coeff(-1);
    }
    return {h0, hm1};
}

}  // namespace

std::pair<CouplingSeries, CouplingSeries> leading_order_series(const Potential& V_in,
                                                               int order) {
    if (order < 0) throw std::invalid_argument("leading_order_series: order < 0");
    Potential V = V_in.symbolic();
    CSeries u(Rational(0), order);
    CSeries z = CSeries::x_power(2, order);
    CSeries x = CSeries::x_power(2, order);
    CSeries prev_u = u, prev_z = z;
    bool stable = false;
    for (int round = 0; round < order + 2; ++round) {
        auto [h0, hm1] = vprime_coeffs(V, u, z, order);
        CSeries nu = u - h0;        // u_new = u - [h^0]V'(Y)
        CSeries nz = z + x - hm1;   // z_new = z + (x - [h^-1]V'(Y))
        if (nu == u && nz == z) {
            stable = true;
            break;
        }
        u = nu;
        z = nz;
    }
    if (!stable) {
        auto [h0, hm1] = vprime_coeffs(V, u, z, order);
        if (!h0.is_zero() || hm1 != x)
            throw NoConvergence("leading_order_series: malformed potential");
    }
    return {u, z};
}

std::pair<CouplingSeries, CouplingSeries> leading_order_residual(
    const Potential& V, const CouplingSeries& u, const CouplingSeries& z) {
    int trunc = std::min(u.truncation(), z.truncation());
    auto [h0, hm1] = vprime_coeffs(V.symbolic(), u, z, trunc);
    return {h0, hm1 - CSeries::x_power(2, trunc)};
}

CouplingSeries apply_numeric_couplings(const Potential& V, const CouplingSeries& s) {
    CouplingSeries out = s;
    for (const auto& [j, v] : V.couplings)
        if (v) out = out.substitute_coupling(j, *v);
    return out;
}

namespace {

class JetEvaluator {
  public:
    JetEvaluator(const CSeries& u, const CSeries& z)
        : trunc_(std::min(u.truncation(), z.truncation())) {
        u_.push_back(u.truncated(trunc_));
        z_.push_back(z.truncated(trunc_));
    }

    const CSeries& jet(VarBase b, unsigned order) {
        auto& chain = b == VarBase::U ? u_ : z_;
        if (b != VarBase::U && b != VarBase::Z)
            throw std::invalid_argument("evaluate: s/r jets are not series-mode");
        while (chain.size() <= order) chain.push_back(chain.back().d_x());
        return chain[order];
    }

    CSeries eval_poly(const Poly& p) {
        CSeries out(Rational(0), trunc_);
        for (const auto& t : p.terms()) {
            CSeries acc(t.coeff, trunc_);
            for (uint32_t i = 0; i < t.mono.e.size(); ++i) {
                VarId v = static_cast<VarId>(t.mono.e[i] >> 16);
                uint32_t k = t.mono.e[i] & 0xffff;
                if (v == VAR_X) {
                    acc *= CSeries::x_power(2 * static_cast<int>(k), trunc_);
                } else {
                    acc *= jet(var_base(v), var_order(v)).pow(static_cast<int>(k));
                }
                if (acc.is_zero()) break;
            }
            out += acc;
        }
        return out;
    }

    CSeries eval(const DiffExpr& e) {
        CSeries out = eval_poly(e.num());
        for (const auto& [f, exp] : e.den())
            out *= eval_poly(f).inverse().pow(exp);
        return out;
    }

    int truncation() const { return trunc_; }

  private:
    int trunc_;
    std::vector<CSeries> u_, z_;
};

}  // namespace

CouplingSeries evaluate(const DiffExpr& e, const CouplingSeries& u,
                        const CouplingSeries& z) {
    JetEvaluator ev(u, z);
    return ev.eval(e);
}

CouplingSeries evaluate(const LogCombo& e, const CouplingSeries& u,
                        const CouplingSeries& z) {
    JetEvaluator ev(u, z);
    CSeries out = ev.eval(e.rational_part());
    for (const auto& [c, arg] : e.logs()) out += ev.eval(arg).log() * c;
    return out;
}

CouplingSeries f0_series(const CouplingSeries& u, const CouplingSeries& z,
                         int order) {
    (void)u;  // the integral form depends on z alone
    CSeries zs = z.truncated(order);
    CSeries ratio = zs * CSeries::x_power(-2, order);
    return ratio.log().antiderivative_x().antiderivative_x();
}

CouplingSeries f_series(int g, const Potential& V, GenusTable& table,
                        OperatorTable& ops, int order) {
    auto [u, z] = leading_order_series(V, order);
    if (g == 0) return f0_series(u, z, order);
    // The x-linear stratum of F^(g) (one-face maps) is annihilated by d_x^2,
    // so the Bernoulli relation alone does not determine it; only the
    // closed forms do. Above genus 2 no closed form is carried.
    if (g > 2)
        throw std::invalid_argument(
            "f_series: no closed form above genus 2; the d_x^2 relation does "
            "not determine the one-face stratum");
    for (int h = 1; h <= g; ++h)
        if (table.z.find(h) == table.z.end()) solve_genus(h, table, ops);
    return g == 1 ? evaluate(f1_closed_form(), u, z)
                  : evaluate(f2_closed_form(), u, z);
}

MapCountReport map_count(const CouplingSeries& F, const std::map<int, int>& profile) {
    MapCountReport rep;
    rep.total = Rational(0);
    int total_vertices = 0;
    Rational fact(1);
    for (const auto& [j, n] : profile) {
        total_vertices += n;
        fact *= Rational::factorial(static_cast<uint32_t>(n));
    }
    Rational sign(total_vertices % 2 ? -1 : 1);
    for (const auto& [x2, c] : F.x_slice(profile)) {
        if (x2 % 2 != 0)
            throw std::logic_error("map_count: half-integer face exponent");
        Rational count = c * fact * sign;
        rep.by_faces[x2 / 2] = count;
        rep.total += count;
    }
    return rep;
}

namespace {

// Affine coupling series in up to two unknown slots; products of two
// slot-carrying values never survive the N-grading truncation, so they are
// rejected outright.
struct ASeries {
    CSeries c0, cA, cB;

    bool has_slot() const { return !cA.is_zero() || !cB.is_zero(); }

    friend ASeries operator+(const ASeries& x, const ASeries& y) {
        return {x.c0 + y.c0, x.cA + y.cA, x.cB + y.cB};
    }
    friend ASeries operator*(const ASeries& x, const ASeries& y) {
        if (x.has_slot() && y.has_slot())
            throw std::logic_error("ASeries: slot product reached the target order");
        ASeries r;
        r.c0 = x.c0 * y.c0;
        r.cA = x.c0 * y.cA + x.cA * y.c0;
        r.cB = x.c0 * y.cB + x.cB * y.c0;
        return r;
    }
    ASeries d_x() const {
        if (has_slot())
            throw std::logic_error("ASeries: derivative of an unknown slot");
        return {c0.d_x(), cA, cB};
    }
};

// N-graded affine series up to grade `order`
struct NGA {
    std::vector<ASeries> g;

    explicit NGA(int order, int trunc) {
        g.resize(order + 1);
        for (auto& a : g) a = {CSeries(Rational(0), trunc), CSeries(Rational(0), trunc),
                               CSeries(Rational(0), trunc)};
    }
    static NGA one(int order, int trunc) {
        NGA r(order, trunc);
        r.g[0].c0 = CSeries(Rational(1), trunc);
        return r;
    }
    NGA mul(const NGA& o) const {
        NGA r(static_cast<int>(g.size()) - 1, g[0].c0.truncation());
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = 0; i + j < g.size(); ++j) r.g[i + j] = r.g[i + j] + (g[i] * o.g[j]);
        return r;
    }
};

// step factor: sum_m (k^m / m!) N^-m d_x^m (series), series itself N-graded
NGA step_series(const std::vector<ASeries>& series, int shift, int order,
                int trunc) {
    NGA f(order, trunc);
    for (int grade = 0; grade <= order; ++grade) {
        const ASeries& sg = series[grade];
        Rational kpow(1), fact(1);
        for (int m = 0; grade + m <= order; ++m) {
            if (m > 0) {
                kpow *= Rational(shift);
                fact *= Rational(m);
                if (sg.has_slot()) break;  // slot derivatives exceed the order
            }
            ASeries v = sg;
            for (int d = 0; d < m; ++d) v = v.d_x();
            Rational c = kpow / fact;
            if (c.is_zero()) continue;
            v.c0 = v.c0 * c;
            v.cA = v.cA * c;
            v.cB = v.cB * c;
            f.g[grade + m] = f.g[grade + m] + v;
        }
    }
    return f;
}

// string equations assembled over Motzkin paths with N-graded affine series
// coefficients; returns the two equations' graded expansions
std::pair<NGA, NGA> assemble(const Potential& V,
                             const std::vector<ASeries>& s_series,
                             const std::vector<ASeries>& r_series, int order,
                             int trunc) {
    NGA eq_a(order, trunc), eq_b(order, trunc);
    auto add_paths = [&](int power, const CSeries& weight) {
        // power = j - 1 path steps
        for (Variant v : {Variant::A, Variant::B}) {
            NGA& eq = v == Variant::A ? eq_a : eq_b;
            for_each_path(power, v == Variant::A ? 0 : -1,
                          [&](const MotzkinPath& p) {
                              NGA acc = NGA::one(order, trunc);
                              int h = 0;
                              for (Step st : p.steps) {
                                  switch (st) {
                                      case Step::Up: ++h; break;
                                      case Step::Flat:
                                          acc = acc.mul(step_series(s_series, h,
                                                                    order, trunc));
                                          break;
                                      case Step::Down:
                                          acc = acc.mul(step_series(r_series, h,
                                                                    order, trunc));
                                          --h;
                                          break;
                                  }
                              }
                              for (int gi = 0; gi <= order; ++gi) {
                                  ASeries scaled = acc.g[gi];
                                  scaled.c0 = scaled.c0 * weight;
                                  scaled.cA = scaled.cA * weight;
                                  scaled.cB = scaled.cB * weight;
                                  eq.g[gi] = eq.g[gi] + scaled;
                              }
                          });
        }
    };
    // gaussian part: V' = lambda contributes (L)_{n,n} and (L)_{n,n-1}
    add_paths(1, CSeries(Rational(1), trunc));
    for (const auto& [j, val] : V.couplings) {
        CSeries tj = val ? CSeries(*val, trunc) : CSeries::coupling(j, trunc);
        add_paths(j - 1, tj * Rational(j));
    }
    return {eq_a, eq_b};
}

}  // namespace

SeriesSolution solve_string_equations_series(const Potential& V_in,
                                             const CouplingSeries& u,
                                             const CouplingSeries& z) {
    Potential V = V_in.symbolic();
    const int trunc = std::min(u.truncation(), z.truncation());
    SeriesSolution sol;

    // stage 1: unknown u1 at N^-1 (slot A)
    {
        std::vector<ASeries> s(2), r(2);
        CSeries zero(Rational(0), trunc);
        s[0] = {u.truncated(trunc), zero, zero};
        s[1] = {zero, CSeries(Rational(1), trunc), zero};  // u1 slot
        r[0] = {z.truncated(trunc), zero, zero};
        r[1] = {zero, zero, zero};
        auto [eqa, eqb] = assemble(V, s, r, 1, trunc);
        // 0 = [N^-1] eq_a: c0 + cA u1
        const ASeries& e1 = eqa.g[1];
        sol.u1 = -(e1.c0 * e1.cA.inverse());
        // the second equation at N^-1 must agree
        const ASeries& e2 = eqb.g[1];
        CSeries resid_b = e2.c0 + e2.cA * sol.u1;
        sol.residuals_zero = resid_b.is_zero();
    }

    // stage 2: unknowns u2 (slot A) and z1 (slot B) at N^-2
    {
        std::vector<ASeries> s(3), r(3);
        CSeries zero(Rational(0), trunc);
        CSeries one(Rational(1), trunc);
        s[0] = {u.truncated(trunc), zero, zero};
        s[1] = {sol.u1, zero, zero};
        s[2] = {zero, one, zero};  // u2 slot
        r[0] = {z.truncated(trunc), zero, zero};
        r[1] = {zero, zero, zero};
        r[2] = {zero, zero, one};  // z1 slot
        auto [eqa, eqb] = assemble(V, s, r, 2, trunc);
        const ASeries& ea = eqa.g[2];
        const ASeries& eb = eqb.g[2];
        // x on the left of the second equation sits at N^0; nothing at N^-2
        CSeries det = ea.cA * eb.cB - ea.cB * eb.cA;
        CSeries det_inv = det.inverse();
        sol.u2 = (eb.c0 * ea.cB - ea.c0 * eb.cB) * det_inv;
        sol.z1 = (ea.c0 * eb.cA - eb.c0 * ea.cA) * det_inv;
        CSeries ra = ea.c0 + ea.cA * sol.u2 + ea.cB * sol.z1;
        CSeries rb = eb.c0 + eb.cA * sol.u2 + eb.cB * sol.z1;
        sol.residuals_zero = sol.residuals_zero && ra.is_zero() && rb.is_zero();
    }
    return sol;
}

}  // namespace stringforge
