#include "stringforge/rational.hpp"

#include <mutex>
#include <vector>

namespace stringforge {

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(std::string_view s) {
    size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
    size_t dot = s.find('.');
    if (dot != std::string_view::npos) {
        std::string digits(s.substr(0, dot));
        std::string_view frac = s.substr(dot + 1);
        digits.append(frac);
        BigInt den = BigInt::pow(BigInt(10), static_cast<uint32_t>(frac.size()));
        return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(s), BigInt(1));
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BigInt g = BigInt::gcd(a.den_, b.den_);
    if (g.is_one()) {
        Rational r;
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        if (r.num_.is_zero()) return Rational();
        r.den_ = a.den_ * b.den_;
        return r;  // coprime by construction
    }
    BigInt ad = a.den_ / g, bd = b.den_ / g;
    BigInt t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return Rational();
    BigInt g2 = BigInt::gcd(t, g);
    Rational r;
    r.num_ = g2.is_one() ? t : t / g2;
    r.den_ = ad * (g2.is_one() ? b.den_ : b.den_ / g2);
    return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    BigInt g1 = BigInt::gcd(a.num_, b.den_);
    BigInt g2 = BigInt::gcd(b.num_, a.den_);
    Rational r;
    r.num_ = (g1.is_one() ? a.num_ : a.num_ / g1) * (g2.is_one() ? b.num_ : b.num_ / g2);
    r.den_ = (g2.is_one() ? a.den_ : a.den_ / g2) * (g1.is_one() ? b.den_ : b.den_ / g1);
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    return a * b.inverse();
}

Rational Rational::pow(int e) const {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? *this : inverse();
    uint32_t k = static_cast<uint32_t>(e > 0 ? e : -e);
    Rational r(1);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::factorial(uint32_t n) {
    BigInt r(1);
    for (uint32_t i = 2; i <= n; ++i) r *= BigInt(static_cast<int64_t>(i));
    return Rational(r);
}

Rational Rational::binomial(int64_t n, uint32_t k) {
    Rational r(1);
    for (uint32_t i = 0; i < k; ++i)
        r *= Rational(n - static_cast<int64_t>(i), static_cast<int64_t>(i) + 1);
    return r;
}

Rational bernoulli(uint32_t n) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    static std::vector<Rational> cache{Rational(1)};
    while (cache.size() <= n) {
        uint32_t m = static_cast<uint32_t>(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational s;
        for (uint32_t j = 0; j < m; ++j)
            s += Rational::binomial(static_cast<int64_t>(m) + 1, j) * cache[j];
        cache.push_back(-s / Rational(static_cast<int64_t>(m) + 1));
    }
    return cache[n];
}

}  // namespace stringforge
