#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "stringforge/rational.hpp"

namespace stringforge {

// Laurent polynomial in the spectral variable h with generic coefficients.
// The coefficient type C must provide: default construction = 0, construction
// from Rational, is_zero(), +, *, unary -, ==, and operator*(C, Rational).
// No zero coefficients are stored; support is finite by construction.
template <typename C>
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly monom(int k, C c) {
        LaurentPoly p;
        if (!c.is_zero()) p.coeffs_[k] = std::move(c);
        return p;
    }

    const std::map<int, C>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int min_exp() const { return coeffs_.begin()->first; }
    int max_exp() const { return coeffs_.rbegin()->first; }

    // coefficient of h^k; zero if absent
    C coeff(int k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? C() : it->second;
    }

    void add_term(int k, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs_.try_emplace(k, C());
        it->second = it->second + c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [k, c] : b.coeffs_) r.add_term(k, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [k, c] : b.coeffs_) r.add_term(k, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ka, ca] : a.coeffs_)
            for (const auto& [kb, cb] : b.coeffs_) r.add_term(ka + kb, ca * cb);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        auto ia = a.coeffs_.begin();
        auto ib = b.coeffs_.begin();
        for (; ia != a.coeffs_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
        return !(a == b);
    }

    // terms by descending h-exponent, coefficients in their canonical form
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.to_string() + ")";
            if (it->first != 0) {
                s += "*h";
                if (it->first != 1) s += "^" + std::to_string(it->first);
            }
        }
        return s;
    }

  private:
    std::map<int, C> coeffs_;
};

// coefficient of h^k in p
template <typename C>
C laurent_coeff(const LaurentPoly<C>& p, int k) {
    return p.coeff(k);
}

// (a*h + b + c*h^-1)^J expanded by the trinomial theorem; support in [-J, J].
// J = 0 gives the constant 1 (empty product).
template <typename C>
LaurentPoly<C> trinomial_power(const C& a, const C& b, const C& c, uint32_t J) {
    auto fill = [&](std::vector<C>& v, const C& base) {
        v.resize(J + 1);
        v[0] = C(Rational(1));
        for (uint32_t i = 1; i <= J; ++i) v[i] = v[i - 1] * base;
    };
    std::vector<C> pa, pb, pc;
    fill(pa, a);
    fill(pb, b);
    fill(pc, c);
    LaurentPoly<C> out;
    for (uint32_t i = 0; i <= J; ++i) {
        for (uint32_t k = 0; i + k <= J; ++k) {
            uint32_t j = J - i - k;
            Rational multi = Rational::factorial(J) /
                             (Rational::factorial(i) * Rational::factorial(j) *
                              Rational::factorial(k));
            out.add_term(static_cast<int>(i) - static_cast<int>(k),
                         pa[i] * pb[j] * pc[k] * multi);
        }
    }
    return out;
}

}  // namespace stringforge
