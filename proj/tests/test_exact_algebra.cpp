#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stringforge/bigint.hpp"
#include "stringforge/diffexpr.hpp"
#include "stringforge/laurent.hpp"
#include "stringforge/poly.hpp"
#include "stringforge/rational.hpp"

using namespace stringforge;

namespace {

BigInt random_bigint(std::mt19937_64& rng, int max_limbs) {
    std::uniform_int_distribution<int> nl(0, max_limbs);
    int n = nl(rng);
    BigInt r;
    for (int i = 0; i < n; ++i) {
        r = r * BigInt::from_u64(~uint64_t(0)) + BigInt::from_u64(rng());
        r = r + BigInt::from_u64(rng() & 0xffff);
    }
    if (rng() & 1) r = -r;
    return r;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int64_t> d(-40, 40);
    int64_t den = 0;
    while (den == 0) den = d(rng);
    return Rational(d(rng), den);
}

LaurentPoly<Rational> random_laurent(std::mt19937_64& rng) {
    LaurentPoly<Rational> p;
    std::uniform_int_distribution<int> exp(-4, 4);
    std::uniform_int_distribution<int> nterms(0, 5);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(exp(rng), random_rational(rng));
    return p;
}

}  // namespace

TEST_CASE("bigint basics") {
    CHECK(BigInt(0).is_zero());
    CHECK(BigInt(-5).to_string() == "-5");
    CHECK((BigInt(1) + BigInt(-1)).is_zero());
    CHECK(BigInt("123456789012345678901234567890").to_string() ==
          "123456789012345678901234567890");
    BigInt a("99999999999999999999999999");
    CHECK((a + BigInt(1)).to_string() == "100000000000000000000000000");
    CHECK((a * a).to_string() ==
          "9999999999999999999999999800000000000000000000000001");
}

TEST_CASE("bigint divmod and gcd randomized") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 2000; ++i) {
        BigInt a = random_bigint(rng, 6);
        BigInt b = random_bigint(rng, 5);
        if (b.is_zero()) b = BigInt(7);
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!a.is_zero()) {
            BigInt g = BigInt::gcd(a, b);
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
    }
}

TEST_CASE("bigint factorial roundtrip") {
    BigInt f(1);
    for (int i = 2; i <= 40; ++i) f *= BigInt(i);
    CHECK(f.to_string() ==
          "815915283247897734345611269596115894272000000000");
    for (int i = 40; i >= 2; --i) {
        BigInt q, r;
        BigInt::divmod(f, BigInt(i), q, r);
        CHECK(r.is_zero());
        f = q;
    }
    CHECK(f.is_one());
}

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b) == Rational(5, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a - a).is_zero());
    CHECK((a - a).den().is_one());
    CHECK(Rational(4, -8) == Rational(-1, 2));
    CHECK(Rational::parse("0.5") == a);
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("7") == Rational(7));

    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        Rational x = random_rational(rng), y = random_rational(rng),
                 z = random_rational(rng);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x + (y + z) == (x + y) + z);
        if (!y.is_zero()) CHECK(x / y * y == x);
        CHECK(BigInt::gcd((x + y).num(), (x + y).den()).is_one());
    }
}

TEST_CASE("poly arithmetic and division") {
    Poly s = Poly::var(make_var(VarBase::S));
    Poly r = Poly::var(make_var(VarBase::R));
    Poly p = (s + r).pow(3);
    auto q = Poly::exact_div(p, s + r);
    REQUIRE(q.has_value());
    CHECK(*q == (s + r).pow(2));
    CHECK(!Poly::exact_div(p + Poly(1), s + r).has_value());

    Poly d = (s * s - r).pow(5) * (s + Poly(2));
    auto q2 = Poly::exact_div(d, (s * s - r).pow(5));
    REQUIRE(q2.has_value());
    CHECK(*q2 == s + Poly(2));
}

TEST_CASE("poly derivative chain rule through jets") {
    Poly z = Poly::var(make_var(VarBase::Z));
    Poly zp = Poly::var(make_var(VarBase::Z, 1));
    Poly x = Poly::var(VAR_X);
    CHECK(z.derivative_x() == zp);
    CHECK(x.derivative_x() == Poly(1));
    // d/dx (x z^2) = z^2 + 2 x z z'
    CHECK((x * z * z).derivative_x() == z * z + Rational(2) * x * z * zp);
}

TEST_CASE("poly gradings") {
    Poly zp = Poly::var(make_var(VarBase::Z, 1));
    Poly up2 = Poly::var(make_var(VarBase::U, 2));
    Poly x = Poly::var(VAR_X);
    Poly m = zp * up2;
    CHECK(*m.poly_degree() == Rational(3, 2));
    CHECK(*m.diff_weight() == 3);
    CHECK(*x.diff_weight() == -1);
    Poly z = Poly::var(make_var(VarBase::Z));
    Poly u = Poly::var(make_var(VarBase::U));
    CHECK(!(z + u).poly_degree().has_value());  // 1 vs 1/2
}

TEST_CASE("laurent coefficient extraction on the trinomial generator") {
    Rational one(1);
    Poly s = Poly::var(make_var(VarBase::S));
    Poly r = Poly::var(make_var(VarBase::R));
    auto T = [&](uint32_t J) { return trinomial_power(Poly(1), s, r, J); };

    // (h + s + r h^-1)^2 = h^2 + 2sh + (s^2+2r) + 2srh^-1 + r^2 h^-2
    auto t2 = T(2);
    CHECK(laurent_coeff(t2, 0) == s * s + Rational(2) * r);
    CHECK(laurent_coeff(t2, 2) == Poly(1));
    CHECK(laurent_coeff(t2, 1) == Rational(2) * s);
    CHECK(laurent_coeff(t2, -1) == Rational(2) * s * r);
    CHECK(laurent_coeff(t2, -2) == r * r);

    auto t1 = T(1);
    CHECK(laurent_coeff(t1, 1) == Poly(1));
    CHECK(laurent_coeff(t1, -1) == r);

    CHECK(laurent_coeff(T(0), 0) == Poly(1));

    // [h^0](h+s+rh^-1)^3 = s^3 + 6sr
    CHECK(laurent_coeff(T(3), 0) == s.pow(3) + Rational(6) * s * r);

    // canonical text: descending h-exponent
    CHECK(T(1).to_string() == "(1)*h + (s) + (r)*h^-1");
}

TEST_CASE("trinomial power over rational-function coefficients") {
    // the coefficient slot is generic; exercise it with rational functions
    DiffExpr u = DiffExpr::jet(VarBase::U);
    DiffExpr z = DiffExpr::jet(VarBase::Z);
    auto t = trinomial_power(DiffExpr(1), u / z, z, 2);
    CHECK(laurent_coeff(t, 0) == (u * u) / (z * z) + Rational(2) * z);
    CHECK(laurent_coeff(t, 1) == Rational(2) * u / z);
    CHECK(laurent_coeff(t, -2) == z * z);
}

TEST_CASE("trinomial power is multiplicative in the exponent") {
    Poly s = Poly::var(make_var(VarBase::S));
    Poly r = Poly::var(make_var(VarBase::R));
    for (uint32_t j1 = 0; j1 <= 5; ++j1)
        for (uint32_t j2 = 0; j2 <= 4; ++j2) {
            auto lhs = trinomial_power(Poly(1), s, r, j1 + j2);
            auto rhs = trinomial_power(Poly(1), s, r, j1) *
                       trinomial_power(Poly(1), s, r, j2);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("laurent ring axioms on random inputs") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 120; ++i) {
        auto a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

// Reflecting identity, with the exponent convention pinned empirically
// against trinomial_power:
//   [h^p] (h+s+rh^-1)^J = r^-p [h^-p] (h+s+rh^-1)^J.
TEST_CASE("reflecting identity, fixed index convention") {
    Poly s = Poly::var(make_var(VarBase::S));
    Poly r = Poly::var(make_var(VarBase::R));
    for (uint32_t J = 0; J <= 8; ++J) {
        auto t = trinomial_power(Poly(1), s, r, J);
        for (int p = -static_cast<int>(J); p <= static_cast<int>(J); ++p) {
            // r^p [h^p] == [h^-p]
            CHECK(r.pow(static_cast<uint32_t>(p >= 0 ? p : 0)) * laurent_coeff(t, p) ==
                  r.pow(static_cast<uint32_t>(p >= 0 ? 0 : -p)) * laurent_coeff(t, -p));
        }
    }
}
