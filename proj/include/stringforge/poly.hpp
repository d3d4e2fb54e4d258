#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stringforge/rational.hpp"
#include "stringforge/smallvec.hpp"

namespace stringforge {

// Variable universe of the engine's polynomial rings: the scaling variable x
// and the jets of four function symbols. u, z are the continuum recurrence
// coefficients; s, r are the pre-genus formal series the Motzkin expansions
// live in.
enum class VarBase : uint8_t { X = 0, U = 1, Z = 2, S = 3, R = 4 };

using VarId = uint16_t;  // (base << 8) | derivative order

constexpr VarId make_var(VarBase b, unsigned order = 0) {
    return static_cast<VarId>((static_cast<unsigned>(b) << 8) | order);
}
constexpr VarBase var_base(VarId v) { return static_cast<VarBase>(v >> 8); }
constexpr unsigned var_order(VarId v) { return v & 0xff; }

inline constexpr VarId VAR_X = make_var(VarBase::X);

std::string var_name(VarId v);

// d/dx image of a single variable: x -> 1 (signalled by nullopt), jet -> next jet.
inline std::optional<VarId> var_dx(VarId v) {
    if (v == VAR_X) return std::nullopt;
    return static_cast<VarId>(v + 1);
}

// Monomial: ascending-VarId packed (var << 16 | exp) entries, all exps > 0.
struct Monomial {
    SmallVec<uint32_t, 6> e;

    static Monomial one() { return Monomial{}; }
    static Monomial var(VarId v, uint32_t exp = 1) {
        Monomial m;
        if (exp) m.e.push_back((static_cast<uint32_t>(v) << 16) | exp);
        return m;
    }

    bool is_one() const { return e.empty(); }
    uint32_t total_degree() const {
        uint32_t d = 0;
        for (uint32_t p : e) d += p & 0xffff;
        return d;
    }
    uint32_t exp_of(VarId v) const {
        for (uint32_t p : e)
            if ((p >> 16) == v) return p & 0xffff;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // nullopt unless b divides a
    static std::optional<Monomial> divide(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    std::string to_string() const;
};

// Graded lex, total degree first; returns <0, 0, >0 like memcmp.
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono_cmp(a, b) < 0;
    }
};

// Sparse multivariate polynomial over Rational. Terms sorted descending by
// mono_cmp; no zero coefficients stored.
class Poly {
  public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Poly() = default;
    explicit Poly(Rational c) {
        if (!c.is_zero()) terms_.push_back({Monomial::one(), std::move(c)});
    }
    explicit Poly(int64_t c) : Poly(Rational(c)) {}
    static Poly var(VarId v, uint32_t exp = 1, Rational c = Rational(1));
    static Poly term(Monomial m, Rational c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
    }
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }
    Rational constant_part() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Poly& a, const Rational& c);
    Poly& operator*=(const Rational& c) { return *this = *this * c; }

    Poly pow(uint32_t e) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Exact division: nullopt if b does not divide a.
    static std::optional<Poly> exact_div(const Poly& a, const Poly& b);

    Poly derivative_x() const;  // total d/dx through the jet chain

    // Simultaneous substitution var -> value for the listed vars.
    Poly substitute(const std::vector<std::pair<VarId, Poly>>& subs) const;

    bool contains_var(VarId v) const;
    bool depends_on_base(VarBase b) const;

    // Rational content (gcd of coefficients, sign of leading term).
    Rational content() const;
    // this == content * primitive part; primitive has integer coprime
    // coefficients and positive leading coefficient.
    Poly primitive_part() const;

    // Gradings; nullopt when terms disagree (non-homogeneous).
    // poly degree: z-jets 1, u-jets 1/2, s/r likewise (r ~ z, s ~ u), x: 0.
    std::optional<Rational> poly_degree() const;
    // diff weight: jet of order m counts m, x counts -1.
    std::optional<int64_t> diff_weight() const;

    std::string to_string() const;
    size_t hash() const;

    // terms() is kept canonical by every constructor path; this builds from a
    // raw descending-sorted, zero-free list.
    static Poly from_sorted(std::vector<Term> terms);

  private:
    std::vector<Term> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const;
};

}  // namespace stringforge
