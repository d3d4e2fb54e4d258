#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stringforge/specialize.hpp"

using namespace stringforge;

namespace {

CouplingKey key(std::initializer_list<std::pair<int, int>> t, int x2) {
    CouplingKey k;
    for (auto [j, e] : t) k.t.push_back((static_cast<uint32_t>(j) << 16) | e);
    k.x2 = x2;
    return k;
}

}  // namespace

TEST_CASE("potential grammar") {
    Potential q = Potential::parse("0.5*l^2 + t4*l^4");
    CHECK(q.degree == 4);
    CHECK(q.couplings.size() == 1);
    CHECK(!q.couplings.at(4).has_value());

    Potential c = Potential::parse("0.5*l^2+t3*l^3");
    CHECK(c.degree == 3);

    Potential g = Potential::parse("0.5*l^2");
    CHECK(g.is_gaussian());

    Potential v = Potential::parse("1/2*l^2 + 1/10*l^4");
    CHECK(v.couplings.at(4).value() == Rational(1, 10));

    CHECK_THROWS_AS(Potential::parse("t3*l^4"), std::invalid_argument);
    CHECK_THROWS_AS(Potential::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("gaussian leading order") {
    Potential V = Potential::parse("0.5*l^2");
    auto [u, z] = leading_order_series(V, 4);
    CHECK(u.is_zero());
    CHECK(z == CouplingSeries::x_power(2, 4));
}

TEST_CASE("quartic leading order") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    auto [u, z] = leading_order_series(V, 3);
    CHECK(u.is_zero());  // even potential
    // z = x - 12 t4 x^2 + 288 t4^2 x^3 - ...
    CHECK(z.coeff(key({}, 2)) == Rational(1));
    CHECK(z.coeff(key({{4, 1}}, 4)) == Rational(-12));
    CHECK(z.coeff(key({{4, 2}}, 6)) == Rational(288));
    auto [ra, rb] = leading_order_residual(V, u, z);
    CHECK(ra.is_zero());
    CHECK(rb.is_zero());
}

TEST_CASE("cubic leading order and scaling exponents") {
    Potential V = Potential::parse("0.5*l^2 + t3*l^3");
    auto [u, z] = leading_order_series(V, 4);
    // u = -6 t3 x + O(t3^2), z = x + 36 t3^2 x^2 + O(t3^4)
    CHECK(u.coeff(key({{3, 1}}, 2)) == Rational(-6));
    CHECK(z.coeff(key({{3, 2}}, 4)) == Rational(36));
    auto [ra, rb] = leading_order_residual(V, u, z);
    CHECK(ra.is_zero());
    CHECK(rb.is_zero());
    // scaling: coefficient of t3^n carries x^(1 + n/2) in z and x^(1/2 + n/2)
    // in u (doubled exponents 2 + n and 1 + n); parity makes every realized
    // exponent an integer, u holding only odd powers of t3
    for (const auto& [k, c] : z.terms()) {
        CHECK(k.x2 == 2 + k.t_degree());
        CHECK(k.t_degree() % 2 == 0);
    }
    for (const auto& [k, c] : u.terms()) {
        CHECK(k.x2 == 1 + k.t_degree());
        CHECK(k.t_degree() % 2 == 1);
    }
}

TEST_CASE("mixed cubic+quartic potential") {
    Potential V = Potential::parse("0.5*l^2 + t3*l^3 + t4*l^4");
    auto [u, z] = leading_order_series(V, 4);
    auto [ra, rb] = leading_order_residual(V, u, z);
    CHECK(ra.is_zero());
    CHECK(rb.is_zero());
    // scaling: doubled x exponent of a t3^a t4^b monomial is
    // 2 + a + 2b in z and 1 + a + 2b in u
    for (const auto& [k, c] : z.terms())
        CHECK(k.x2 == 2 + k.t_exp(3) + 2 * k.t_exp(4));
    for (const auto& [k, c] : u.terms())
        CHECK(k.x2 == 1 + k.t_exp(3) + 2 * k.t_exp(4));
    // cross terms genuinely appear
    CouplingKey mixed;
    mixed.t.push_back((3u << 16) | 1);
    mixed.t.push_back((4u << 16) | 1);
    mixed.x2 = 1 + 1 + 2;
    CHECK(u.coeff(mixed) != Rational(0));
    // independent series route agrees with the solver here too
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    solve_genus(1, t, ops);
    SeriesSolution sol = solve_string_equations_series(V, u, z);
    CHECK(sol.residuals_zero);
    CHECK(sol.z1 == evaluate(t.z.at(1), u, z));
    CHECK(sol.u2 == evaluate(t.u.at(2), u, z));
}

TEST_CASE("evaluate jets and logs") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    auto [u, z] = leading_order_series(V, 3);
    // z' = 1 - 24 t4 x + ...
    CouplingSeries zp = evaluate(DiffExpr::jet(VarBase::Z, 1), u, z);
    CHECK(zp.coeff(key({}, 0)) == Rational(1));
    CHECK(zp.coeff(key({{4, 1}}, 2)) == Rational(-24));
    // log(z/x) for the gaussian is 0
    Potential G = Potential::parse("0.5*l^2");
    auto [gu, gz] = leading_order_series(G, 3);
    LogCombo lzx =
        LogCombo::log_term(Rational(1), DiffExpr::jet(VarBase::Z) / DiffExpr::x());
    CHECK(evaluate(lzx, gu, gz).is_zero());
}

TEST_CASE("f0 for the quartic potential counts planar one-vertex maps") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    auto [u, z] = leading_order_series(V, 3);
    CouplingSeries f0 = f0_series(u, z, 3);
    // coefficient of (-t4)^1 x^3 is 2
    CHECK(f0.coeff(key({{4, 1}}, 6)) == Rational(-2));
    MapCountReport rep = map_count(f0, {{4, 1}});
    CHECK(rep.by_faces.at(3) == Rational(2));
    CHECK(rep.total == Rational(2));
}

TEST_CASE("f1 for the quartic potential counts the torus one-vertex map") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    CouplingSeries f1 = f_series(1, V, t, ops, 3);
    MapCountReport rep = map_count(f1, {{4, 1}});
    CHECK(rep.by_faces.size() == 1);
    CHECK(rep.by_faces.at(1) == Rational(1));
    // gaussian genus-1 series is zero
    Potential G = Potential::parse("0.5*l^2");
    CHECK(f_series(1, G, t, ops, 2).is_zero());
}

TEST_CASE("cross-mode consistency at orders N^-1 and N^-2") {
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    solve_genus(1, t, ops);
    DiffExpr u1_expr = t.u.at(1), z1_expr = t.z.at(1), u2_expr = t.u.at(2);
    for (const char* pot : {"0.5*l^2 + t4*l^4", "0.5*l^2 + t3*l^3"}) {
        CAPTURE(pot);
        Potential V = Potential::parse(pot);
        auto [u, z] = leading_order_series(V, 4);
        SeriesSolution sol = solve_string_equations_series(V, u, z);
        CHECK(sol.residuals_zero);
        CHECK(sol.u1 == evaluate(u1_expr, u, z));
        CHECK(sol.z1 == evaluate(z1_expr, u, z));
        CHECK(sol.u2 == evaluate(u2_expr, u, z));
        // u1 = u'/2 holds in series form as well
        CHECK(sol.u1 == u.d_x() * Rational(1, 2));
    }
}

TEST_CASE("negative numeric couplings parse with the sign folded in") {
    Potential V = Potential::parse("0.5*l^2 - 1/10*l^4");
    CHECK(V.couplings.at(4).value() == Rational(-1, 10));
    auto [u, z] = leading_order_series(V, 2);
    CouplingSeries zn = apply_numeric_couplings(V, z);
    CHECK(zn.coeff([] {
        CouplingKey k;
        k.x2 = 4;
        return k;
    }()) == Rational(12, 10));
    CHECK(u.is_zero());
}

TEST_CASE("numeric couplings substitute exactly at output") {
    Potential V = Potential::parse("0.5*l^2 + 1/10*l^4");
    auto [u, z] = leading_order_series(V, 3);
    CHECK(u.is_zero());
    // computed in the symbolic grading, values folded in afterwards:
    // z = x - (12/10) x^2 + (288/100) x^3 - ...
    CouplingSeries zn = apply_numeric_couplings(V, z);
    CHECK(zn.coeff(key({}, 2)) == Rational(1));
    CHECK(zn.coeff(key({}, 4)) == Rational(-12, 10));
    CHECK(zn.coeff(key({}, 6)) == Rational(288, 100));
}

TEST_CASE("recurrence-built and potential-explicit phi/psi agree on solutions") {
    for (const char* pot : {"0.5*l^2 + t4*l^4", "0.5*l^2 + t3*l^3"}) {
        CAPTURE(pot);
        Potential V = Potential::parse(pot);
        auto [u, z] = leading_order_series(V, 4);
        for (int m = 0; m <= 3; ++m) {
            auto [phi_e, psi_e] = phi_psi_explicit(V, m, u, z);
            CHECK(evaluate(phi_psi(m).phi, u, z) == phi_e);
            CHECK(evaluate(phi_psi(m).psi, u, z) == psi_e);
        }
    }
}

TEST_CASE("antiderivative guards") {
    CouplingSeries bad = CouplingSeries::x_power(-2, 3);
    CHECK_THROWS_AS(bad.antiderivative_x(), NonIntegrableMonomial);
    CouplingSeries z0;
    CHECK_THROWS_AS(z0.inverse(), DivisionByZeroSeries);
    CouplingSeries notmono =
        CouplingSeries::x_power(0, 3) + CouplingSeries::x_power(2, 3);
    CHECK_THROWS_AS(notmono.inverse(), DivisionByZeroSeries);
}

TEST_CASE("the d_x^2 relation determines F only up to the one-face stratum") {
    // d_x^2 annihilates the x-linear terms of F (one-face maps), so the
    // double antiderivative of the relation agrees with the closed forms on
    // every other stratum and genuinely misses that one; this is why no
    // series is offered above genus 2
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    solve_genus(1, t, ops);
    solve_genus(2, t, ops);
    auto drop_linear = [](const CouplingSeries& s) {
        CouplingSeries out(Rational(0), s.truncation());
        for (const auto& [k, c] : s.terms())
            if (k.x2 != 2) out += CouplingSeries::monomial(k, c, s.truncation());
        return out;
    };
    for (const char* pot : {"0.5*l^2 + t4*l^4", "0.5*l^2 + t3*l^3"}) {
        CAPTURE(pot);
        Potential V = Potential::parse(pot);
        auto [u, z] = leading_order_series(V, 4);
        for (int g : {1, 2}) {
            CouplingSeries via_relation = evaluate(free_energy_relation(g, t), u, z)
                                              .antiderivative_x()
                                              .antiderivative_x();
            CouplingSeries via_closed =
                evaluate(g == 1 ? f1_closed_form() : f2_closed_form(), u, z);
            CHECK(via_relation == drop_linear(via_closed));
            CHECK(drop_linear(via_closed - via_relation).is_zero());
        }
    }
    // the missing stratum is real: the genus-1 quartic series starts -t4 x
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    GenusTable t2 = GenusTable::base();
    OperatorTable ops2;
    CouplingSeries f1 = f_series(1, V, t2, ops2, 3);
    CouplingKey k;
    k.t.push_back((4u << 16) | 1);
    k.x2 = 2;
    CHECK(f1.coeff(k) == Rational(-1));
    CHECK_THROWS_AS(f_series(3, V, t2, ops2, 3), std::invalid_argument);
}

TEST_CASE("map counts past the truncation are rejected") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    auto [u, z] = leading_order_series(V, 2);
    CouplingSeries f0 = f0_series(u, z, 2);
    CHECK_THROWS_AS(map_count(f0, std::map<int, int>{{4, 3}}), TruncationExceeded);
}
