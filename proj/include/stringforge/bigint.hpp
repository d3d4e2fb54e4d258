#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "stringforge/smallvec.hpp"

namespace stringforge {

// Signed arbitrary-precision integer, base 2^64 limbs, little-endian.
// Invariants: no leading zero limbs; sign == 0 iff no limbs.
class BigInt {
  public:
    BigInt() = default;
    BigInt(int64_t v);
    explicit BigInt(std::string_view decimal);

    static BigInt from_u64(uint64_t v);

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    bool fits_i64() const;
    int64_t to_i64() const;  // caller checks fits_i64

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncated toward zero; remainder has the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative
    static BigInt pow(const BigInt& base, uint32_t e);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b);
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    std::string to_string() const;
    size_t hash() const;

  private:
    int8_t sign_ = 0;
    SmallVec<uint64_t, 2> limbs_;

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static void add_mag(const BigInt& a, const BigInt& b, BigInt& out);
    // |a| >= |b| required.
    static void sub_mag(const BigInt& a, const BigInt& b, BigInt& out);
    static void mul_mag(const BigInt& a, const BigInt& b, BigInt& out);
    static void divmod_mag(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    void shl_bits(unsigned k);
    void shr_bits(unsigned k);
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1) == 0; }

    friend class Rational;
};

}  // namespace stringforge
