#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stringforge/phipsi.hpp"

using namespace stringforge;

namespace {
DiffExpr U(unsigned k = 0) { return DiffExpr::jet(VarBase::U, k); }
DiffExpr Z(unsigned k = 0) { return DiffExpr::jet(VarBase::Z, k); }
}  // namespace

TEST_CASE("initial pair and first recurrence step") {
    CHECK(phi_psi(0).phi.is_zero());
    CHECK(phi_psi(0).psi == DiffExpr::x());
    DiffExpr D = discriminant();
    CHECK(phi_psi(1).phi == Z(1) / D);
    CHECK(phi_psi(1).psi == -(Z(0) * U(1)) / D);
}

TEST_CASE("unwinding identities hold for m = 1..5") {
    for (int m = 1; m <= 5; ++m) CHECK(check_unwinding(m));
}

TEST_CASE("denominators divide D^(2m-1)") {
    Poly D = discriminant_poly();
    for (int m = 1; m <= 6; ++m) {
        CHECK(phi_psi(m).phi.denominator_divides(D, 2 * m - 1));
        CHECK(phi_psi(m).psi.denominator_divides(D, 2 * m - 1));
    }
}

TEST_CASE("phi and psi have differential weight -1") {
    for (int m = 1; m <= 6; ++m) {
        auto wp = phi_psi(m).phi.diff_weight();
        auto wq = phi_psi(m).psi.diff_weight();
        REQUIRE(wp.has_value());
        REQUIRE(wq.has_value());
        CHECK(*wp == -1);
        CHECK(*wq == -1);
    }
    CHECK(*phi_psi(0).psi.diff_weight() == -1);  // psi_0 = x
}

TEST_CASE("explicit pair for the gaussian potential") {
    Potential V;  // l^2/2 only
    CouplingSeries u(Rational(0));
    CouplingSeries z = CouplingSeries::x_power(2);
    auto [phi0, psi0] = phi_psi_explicit(V, 0, u, z);
    CHECK(phi0 == u);   // [h^0] V'(Y) = u = 0
    CHECK(psi0 == z);   // [h^-1] V'(Y) = z = x
}

TEST_CASE("explicit pair for the cubic potential at m = 0") {
    // V = l^2/2 + t l^3: phi_0 = u + 3t(u^2 + 2z), psi_0 = z + 6tuz
    Potential V = Potential::parse("0.5*l^2 + t3*l^3");
    CouplingSeries u = CouplingSeries::x_power(1);  // stand-in series sqrt(x)
    CouplingSeries z = CouplingSeries::x_power(2);
    auto [phi0, psi0] = phi_psi_explicit(V, 0, u, z);
    CouplingSeries t3 = CouplingSeries::coupling(3);
    CHECK(phi0 == u + Rational(3) * t3 * (u * u + Rational(2) * z));
    CHECK(psi0 == z + Rational(6) * t3 * u * z);
}

TEST_CASE("explicit pair matches derivative order shifts") {
    // quartic: V' = l + 4 t4 l^3, V'' = 1 + 12 t4 l^2
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    CouplingSeries u(Rational(0));
    CouplingSeries z = CouplingSeries::x_power(2);
    CouplingSeries t4 = CouplingSeries::coupling(4);
    auto [phi0, psi0] = phi_psi_explicit(V, 0, u, z);
    // [h^-1](h + z/h)^3 = 3 z^2 -> psi_0 = z + 12 t4 z^2
    CHECK(psi0 == z + Rational(12) * t4 * z * z);
    CHECK(phi0.is_zero());
    auto [phi1, psi1] = phi_psi_explicit(V, 1, u, z);
    // V'' = 1 + 12 t4 l^2: [h^0](h+z/h)^2 = 2z, [h^-1] = 0
    CHECK(phi1 == CouplingSeries(Rational(1)) + Rational(24) * t4 * z);
    CHECK(psi1.is_zero());
}
