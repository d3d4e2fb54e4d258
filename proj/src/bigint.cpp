#include "stringforge/bigint.hpp"

#include <cassert>
#include <stdexcept>

namespace stringforge {

using u64 = uint64_t;
using u128 = unsigned __int128;

BigInt::BigInt(int64_t v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    u64 mag = v > 0 ? static_cast<u64>(v) : (~static_cast<u64>(v) + 1);
    limbs_.push_back(mag);
}

BigInt BigInt::from_u64(u64 v) {
    BigInt r;
    if (v) {
        r.sign_ = 1;
        r.limbs_.push_back(v);
    }
    return r;
}

BigInt::BigInt(std::string_view s) {
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    BigInt acc;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        acc = acc * BigInt(10) + BigInt(s[i] - '0');
    }
    *this = neg ? -acc : acc;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

bool BigInt::fits_i64() const {
    if (limbs_.size() > 1) return false;
    if (limbs_.empty()) return true;
    u64 m = limbs_[0];
    return sign_ > 0 ? m <= static_cast<u64>(INT64_MAX)
                     : m <= static_cast<u64>(INT64_MAX) + 1;
}

int64_t BigInt::to_i64() const {
    if (limbs_.empty()) return 0;
    return sign_ > 0 ? static_cast<int64_t>(limbs_[0])
                     : -static_cast<int64_t>(limbs_[0] - 1) - 1;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (uint32_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    const BigInt& hi = a.limbs_.size() >= b.limbs_.size() ? a : b;
    const BigInt& lo = a.limbs_.size() >= b.limbs_.size() ? b : a;
    out.limbs_.resize(hi.limbs_.size());
    u64 carry = 0;
    uint32_t i = 0;
    for (; i < lo.limbs_.size(); ++i) {
        u64 s = hi.limbs_[i] + carry;
        carry = s < carry;
        u64 t = s + lo.limbs_[i];
        carry += t < s;
        out.limbs_[i] = t;
    }
    for (; i < hi.limbs_.size(); ++i) {
        u64 s = hi.limbs_[i] + carry;
        carry = s < carry;
        out.limbs_[i] = s;
    }
    if (carry) out.limbs_.push_back(carry);
}

void BigInt::sub_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    out.limbs_.resize(a.limbs_.size());
    u64 borrow = 0;
    uint32_t i = 0;
    for (; i < b.limbs_.size(); ++i) {
        u64 s = a.limbs_[i] - borrow;
        u64 nb = s > a.limbs_[i];
        u64 t = s - b.limbs_[i];
        nb += t > s;
        out.limbs_[i] = t;
        borrow = nb;
    }
    for (; i < a.limbs_.size(); ++i) {
        u64 s = a.limbs_[i] - borrow;
        borrow = s > a.limbs_[i];
        out.limbs_[i] = s;
    }
    assert(borrow == 0);
}

void BigInt::mul_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    out.limbs_.clear();
    out.limbs_.resize(a.limbs_.size() + b.limbs_.size(), 0);
    for (uint32_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        u64 ai = a.limbs_[i];
        if (ai == 0) continue;
        for (uint32_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(ai) * b.limbs_[j] + out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        uint32_t k = i + b.limbs_.size();
        while (carry) {
            u64 s = out.limbs_[k] + carry;
            carry = s < out.limbs_[k];
            out.limbs_[k] = s;
            ++k;
        }
    }
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        BigInt::add_mag(a, b, r);
        r.sign_ = a.sign_;
    } else {
        int c = BigInt::cmp_mag(a, b);
        if (c == 0) return BigInt();
        if (c > 0) {
            BigInt::sub_mag(a, b, r);
            r.sign_ = a.sign_;
        } else {
            BigInt::sub_mag(b, a, r);
            r.sign_ = b.sign_;
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    // single-limb fast path
    if (a.limbs_.size() == 1 && b.limbs_.size() == 1) {
        u128 p = static_cast<u128>(a.limbs_[0]) * b.limbs_[0];
        r.limbs_.push_back(static_cast<u64>(p));
        u64 hi = static_cast<u64>(p >> 64);
        if (hi) r.limbs_.push_back(hi);
    } else {
        BigInt::mul_mag(a, b, r);
        r.trim();
    }
    r.sign_ = a.sign_ * b.sign_;
    return r;
}

void BigInt::shl_bits(unsigned k) {
    if (is_zero() || k == 0) return;
    unsigned limbshift = k / 64, bitshift = k % 64;
    uint32_t n = limbs_.size();
    limbs_.resize(n + limbshift + 1, 0);
    for (uint32_t i = n + limbshift + 1; i-- > 0;) {
        u64 v = 0;
        if (i >= limbshift) {
            uint32_t j = i - limbshift;
            if (j < n) v = limbs_[j] << bitshift;
            if (bitshift && j >= 1 && j - 1 < n)
                v |= limbs_[j - 1] >> (64 - bitshift);
            if (bitshift && j == n && n >= 1)
                v = limbs_[n - 1] >> (64 - bitshift);
        }
        limbs_[i] = v;
    }
    trim();
}

void BigInt::shr_bits(unsigned k) {
    if (is_zero() || k == 0) return;
    unsigned limbshift = k / 64, bitshift = k % 64;
    if (limbshift >= limbs_.size()) {
        *this = BigInt();
        return;
    }
    uint32_t n = limbs_.size();
    for (uint32_t i = 0; i + limbshift < n; ++i) {
        u64 v = limbs_[i + limbshift] >> bitshift;
        if (bitshift && i + limbshift + 1 < n)
            v |= limbs_[i + limbshift + 1] << (64 - bitshift);
        limbs_[i] = v;
    }
    limbs_.resize(n - limbshift);
    trim();
}

namespace {
unsigned clz64(u64 x) { return x ? __builtin_clzll(x) : 64; }
}  // namespace

// Knuth algorithm D on magnitudes.
void BigInt::divmod_mag(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    assert(!b.is_zero());
    if (cmp_mag(a, b) < 0) {
        q = BigInt();
        r = a;
        r.sign_ = r.limbs_.empty() ? 0 : 1;
        return;
    }
    if (b.limbs_.size() == 1) {
        u64 d = b.limbs_[0];
        q.limbs_.resize(a.limbs_.size());
        u64 rem = 0;
        for (uint32_t i = a.limbs_.size(); i-- > 0;) {
            u128 cur = (static_cast<u128>(rem) << 64) | a.limbs_[i];
            q.limbs_[i] = static_cast<u64>(cur / d);
            rem = static_cast<u64>(cur % d);
        }
        q.sign_ = 1;
        q.trim();
        r = from_u64(rem);
        return;
    }
    unsigned shift = clz64(b.limbs_.back());
    BigInt u = a, v = b;
    u.sign_ = v.sign_ = 1;
    u.shl_bits(shift);
    v.shl_bits(shift);
    uint32_t n = v.limbs_.size();
    uint32_t m = u.limbs_.size() - n;
    u.limbs_.resize(u.limbs_.size() + 1, 0);
    q.limbs_.clear();
    q.limbs_.resize(m + 1, 0);
    u64 vtop = v.limbs_[n - 1], vsecond = v.limbs_[n - 2];
    for (uint32_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u.limbs_[j + n]) << 64) | u.limbs_[j + n - 1];
        u64 qhat = static_cast<u64>(num / vtop);
        u64 rhat = static_cast<u64>(num % vtop);
        if (num / vtop >> 64) qhat = ~u64(0);  // cap at 2^64-1
        while (true) {
            u128 lhs = static_cast<u128>(qhat) * vsecond;
            u128 rhs = (static_cast<u128>(rhat) << 64) | u.limbs_[j + n - 2];
            if (lhs > rhs) {
                --qhat;
                u64 nr = rhat + vtop;
                if (nr < rhat) break;  // overflow -> done
                rhat = nr;
            } else {
                break;
            }
        }
        // u[j..j+n] -= qhat * v
        u64 borrow = 0, carry = 0;
        for (uint32_t i = 0; i < n; ++i) {
            u128 p = static_cast<u128>(qhat) * v.limbs_[i] + carry;
            carry = static_cast<u64>(p >> 64);
            u64 sub = static_cast<u64>(p);
            u64 cur = u.limbs_[j + i];
            u64 t = cur - sub;
            u64 nb = t > cur;
            u64 t2 = t - borrow;
            nb += t2 > t;
            u.limbs_[j + i] = t2;
            borrow = nb;
        }
        u64 cur = u.limbs_[j + n];
        u64 t = cur - carry;
        u64 nb = t > cur;
        u64 t2 = t - borrow;
        nb += t2 > t;
        u.limbs_[j + n] = t2;
        if (nb) {
            // qhat was one too large: add back
            --qhat;
            u64 c = 0;
            for (uint32_t i = 0; i < n; ++i) {
                u64 s = u.limbs_[j + i] + c;
                c = s < c;
                u64 s2 = s + v.limbs_[i];
                c += s2 < s;
                u.limbs_[j + i] = s2;
            }
            u.limbs_[j + n] += c;
        }
        q.limbs_[j] = qhat;
    }
    q.sign_ = 1;
    q.trim();
    u.limbs_.resize(n);
    u.trim();
    u.shr_bits(shift);
    r = u;
    if (!r.limbs_.empty()) r.sign_ = 1;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    BigInt qq, rr;
    divmod_mag(a, b, qq, rr);
    qq.sign_ = qq.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    rr.sign_ = rr.limbs_.empty() ? 0 : a.sign_;
    q = qq;
    r = rr;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    // single-limb fast path: binary gcd on u64
    if (a.limbs_.size() == 1 && b.limbs_.size() == 1) {
        u64 x = a.limbs_[0], y = b.limbs_[0];
        unsigned sh = __builtin_ctzll(x | y);
        x >>= __builtin_ctzll(x);
        while (y) {
            y >>= __builtin_ctzll(y);
            if (x > y) std::swap(x, y);
            y -= x;
        }
        return from_u64(x << sh);
    }
    BigInt x = a.abs(), y = b.abs();
    // Euclid with Knuth-D remainder; magnitudes shrink fast.
    while (!y.is_zero()) {
        BigInt q, r;
        divmod_mag(x, y, q, r);
        x = y;
        y = r;
    }
    return x;
}

BigInt BigInt::pow(const BigInt& base, uint32_t e) {
    BigInt r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && BigInt::cmp_mag(a, b) == 0;
}

bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = BigInt::cmp_mag(a, b);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    const BigInt chunk(1000000000000000000LL);  // 10^18
    std::string out;
    while (!t.is_zero()) {
        BigInt q, r;
        divmod_mag(t, chunk, q, r);
        u64 part = r.limbs_.empty() ? 0 : r.limbs_[0];
        std::string digits = std::to_string(part);
        if (!q.is_zero()) digits.insert(0, 18 - digits.size(), '0');
        out.insert(0, digits);
        t = q;
    }
    if (sign_ < 0) out.insert(0, 1, '-');
    return out;
}

size_t BigInt::hash() const {
    size_t h = static_cast<size_t>(sign_) * 0x9e3779b97f4a7c15ULL;
    for (uint32_t i = 0; i < limbs_.size(); ++i)
        h = h * 1099511628211ULL ^ limbs_[i];
    return h;
}

}  // namespace stringforge
