#include "stringforge/genfun.hpp"
#include "stringforge/phipsi.hpp"

namespace stringforge {

LogCombo f1_closed_form() {
    LogCombo f = LogCombo::log_term(Rational(1, 24), discriminant());
    f = f + LogCombo::log_term(Rational(-1, 12),
                               DiffExpr::jet(VarBase::Z) / DiffExpr::x());
    return f;
}

LogCombo f1_closed_form_symmetric() {
    LogCombo f = LogCombo::log_term(Rational(1, 12), DiffExpr::jet(VarBase::Z, 1));
    f = f + LogCombo::log_term(Rational(-1, 12),
                               DiffExpr::jet(VarBase::Z) / DiffExpr::x());
    return f;
}

namespace {

// one bracket monomial: coeff * z^zp * prod of jets (base, order, exp)
struct JetFactor {
    VarBase base;
    unsigned order;
    unsigned exp;
};

Poly bracket_term(int64_t coeff, unsigned zp, std::initializer_list<JetFactor> js) {
    Monomial m = Monomial::var(make_var(VarBase::Z, 0), zp);
    for (const auto& j : js) m = m * Monomial::var(make_var(j.base, j.order), j.exp);
    return Poly::term(m, Rational(coeff));
}

constexpr JetFactor up{VarBase::U, 1, 1};
JetFactor upn(unsigned e) { return {VarBase::U, 1, e}; }
JetFactor zpn(unsigned e) { return {VarBase::Z, 1, e}; }
constexpr JetFactor upp{VarBase::U, 2, 1};
JetFactor uppn(unsigned e) { return {VarBase::U, 2, e}; }
constexpr JetFactor zpp{VarBase::Z, 2, 1};
JetFactor zppn(unsigned e) { return {VarBase::Z, 2, e}; }
constexpr JetFactor u3{VarBase::U, 3, 1};
constexpr JetFactor u4{VarBase::U, 4, 1};
constexpr JetFactor z3{VarBase::Z, 3, 1};
constexpr JetFactor z4{VarBase::Z, 4, 1};

Poly f2_bracket() {
    Poly b;
    b += bracket_term(-24, 0, {zpn(10)});
    b += bracket_term(96, 1, {upn(2), zpn(8)});
    b += bracket_term(24, 1, {zpp, zpn(8)});
    b += bracket_term(-8, 2, {z3, zpn(7)});
    b += bracket_term(-144, 2, {upn(4), zpn(6)});
    b += bracket_term(-84, 3, {uppn(2), zpn(6)});
    b += bracket_term(6, 2, {zppn(2), zpn(6)});
    b += bracket_term(-96, 2, {upn(2), zpp, zpn(6)});
    b += bracket_term(-120, 3, {up, u3, zpn(6)});
    b += bracket_term(20, 3, {z4, zpn(6)});
    b += bracket_term(-384, 3, {upn(3), upp, zpn(5)});
    b += bracket_term(384, 3, {up, upp, zpp, zpn(5)});
    b += bracket_term(-84, 4, {upp, u3, zpn(5)});
    b += bracket_term(172, 3, {upn(2), z3, zpn(5)});
    b += bracket_term(-84, 3, {zpp, z3, zpn(5)});
    b += bracket_term(-40, 4, {up, u4, zpn(5)});
    b += bracket_term(15, 3, {upn(6), zpn(4)});
    b += bracket_term(64, 3, {zppn(3), zpn(4)});
    b += bracket_term(-638, 4, {upn(2), uppn(2), zpn(4)});
    b += bracket_term(-340, 3, {upn(2), zppn(2), zpn(4)});
    b += bracket_term(451, 3, {upn(4), zpp, zpn(4)});
    b += bracket_term(192, 4, {uppn(2), zpp, zpn(4)});
    b += bracket_term(48, 4, {upn(3), u3, zpn(4)});
    b += bracket_term(252, 4, {up, zpp, u3, zpn(4)});
    b += bracket_term(252, 4, {up, upp, z3, zpn(4)});
    b += bracket_term(-20, 4, {upn(2), z4, zpn(4)});
    b += bracket_term(-256, 5, {up, uppn(3), zpn(3)});
    b += bracket_term(-768, 4, {up, upp, zppn(2), zpn(3)});
    b += bracket_term(1152, 4, {upn(3), upp, zpp, zpn(3)});
    b += bracket_term(-168, 5, {upn(2), upp, u3, zpn(3)});
    b += bracket_term(-152, 4, {upn(4), z3, zpn(3)});
    b += bracket_term(-168, 4, {upn(2), zpp, z3, zpn(3)});
    b += bracket_term(80, 5, {upn(3), u4, zpn(3)});
    b += bracket_term(-7, 4, {upn(8), zpn(2)});
    b += bracket_term(384, 4, {upn(2), zppn(3), zpn(2)});
    b += bracket_term(-68, 5, {upn(4), uppn(2), zpn(2)});
    b += bracket_term(-430, 4, {upn(4), zppn(2), zpn(2)});
    b += bracket_term(-2, 4, {upn(6), zpp, zpn(2)});
    b += bracket_term(1152, 5, {upn(2), uppn(2), zpp, zpn(2)});
    b += bracket_term(96, 5, {upn(5), u3, zpn(2)});
    b += bracket_term(-168, 5, {upn(3), zpp, u3, zpn(2)});
    b += bracket_term(-168, 5, {upn(3), upp, z3, zpn(2)});
    b += bracket_term(-20, 5, {upn(4), z4, zpn(2)});
    b += bracket_term(-256, 6, {upn(3), uppn(3), zpn(1)});
    b += bracket_term(-768, 5, {upn(3), upp, zppn(2), zpn(1)});
    b += bracket_term(252, 6, {upn(4), upp, u3, zpn(1)});
    b += bracket_term(-12, 5, {upn(6), z3, zpn(1)});
    b += bracket_term(252, 5, {upn(4), zpp, z3, zpn(1)});
    b += bracket_term(-40, 6, {upn(5), u4, zpn(1)});
    b += bracket_term(64, 5, {upn(4), zppn(3)});
    b += bracket_term(22, 6, {upn(6), uppn(2)});
    b += bracket_term(-4, 5, {upn(6), zppn(2)});
    b += bracket_term(7, 5, {upn(8), zpp});
    b += bracket_term(192, 6, {upn(4), uppn(2), zpp});
    b += bracket_term(-24, 6, {upn(7), u3});
    b += bracket_term(-84, 6, {upn(5), zpp, u3});
    b += bracket_term(-84, 6, {upn(5), upp, z3});
    b += bracket_term(20, 6, {upn(6), z4});
    return b;
}

}  // namespace

LogCombo f2_closed_form() {
    DiffExpr x = DiffExpr::x();
    DiffExpr first = DiffExpr(Rational(1, 240)) / x / x;
    DiffExpr z = DiffExpr::jet(VarBase::Z);
    DiffExpr D = discriminant();
    DiffExpr second = DiffExpr(f2_bracket()) * Rational(1, 5760) / z / z;
    for (int i = 0; i < 4; ++i) second = second / D;
    return LogCombo(first + second);
}

}  // namespace stringforge
