#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "stringforge/bigint.hpp"

namespace stringforge {

// Exact rational number, always in lowest terms with positive denominator.
// Canonical zero is 0/1.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}
    Rational(int64_t n, int64_t d) : Rational(BigInt(n), BigInt(d)) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        normalize();
    }
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    // Accepts "p", "p/q" and decimal literals like "0.5" (kept exact).
    static Rational parse(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    bool is_negative() const { return num_.is_negative(); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(den_, num_);
    }

    Rational pow(int e) const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) < (b.num_ * a.den_);
    }

    // "p" for integers, "p/q" otherwise.
    std::string to_string() const;
    size_t hash() const { return num_.hash() * 31 + den_.hash(); }

    static Rational factorial(uint32_t n);
    static Rational binomial(int64_t n, uint32_t k);

  private:
    BigInt num_, den_;
    void normalize();
};

// Bernoulli number with the B_1 = -1/2 convention; memoized.
Rational bernoulli(uint32_t n);

}  // namespace stringforge
