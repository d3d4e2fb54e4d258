#pragma once

#include <map>
#include <string>
#include <vector>

#include "stringforge/poly.hpp"

namespace stringforge {

// Rational function in x and the jets of u, z (and s, r for the pre-genus
// ring). The denominator is kept factored: each factor is a primitive
// integer-coefficient polynomial with positive leading coefficient, mapped to
// its exponent. Every arithmetic operation re-reduces by exact trial division
// of the numerator by each denominator factor; the factors this engine ever
// divides by (x, z, D = (z')^2 - z(u')^2, log arguments) are irreducible, so
// this keeps num/den coprime.
class DiffExpr {
  public:
    DiffExpr() = default;
    explicit DiffExpr(Rational c) : num_(std::move(c)) {}
    explicit DiffExpr(int64_t c) : num_(c) {}
    explicit DiffExpr(Poly p) : num_(std::move(p)) {}

    static DiffExpr var(VarId v) { return DiffExpr(Poly::var(v)); }
    static DiffExpr x() { return var(VAR_X); }
    static DiffExpr jet(VarBase b, unsigned order = 0) {
        return var(make_var(b, order));
    }

    const Poly& num() const { return num_; }
    const std::map<Poly, int, PolyLess>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rational constant_value() const { return num_.constant_part(); }

    Poly den_expanded() const;

    friend DiffExpr operator+(const DiffExpr& a, const DiffExpr& b);
    friend DiffExpr operator-(const DiffExpr& a, const DiffExpr& b);
    friend DiffExpr operator*(const DiffExpr& a, const DiffExpr& b);
    friend DiffExpr operator/(const DiffExpr& a, const DiffExpr& b);
    DiffExpr operator-() const;
    DiffExpr& operator+=(const DiffExpr& o) { return *this = *this + o; }
    DiffExpr& operator-=(const DiffExpr& o) { return *this = *this - o; }
    DiffExpr& operator*=(const DiffExpr& o) { return *this = *this * o; }
    DiffExpr& operator/=(const DiffExpr& o) { return *this = *this / o; }
    friend DiffExpr operator*(const DiffExpr& a, const Rational& c);

    DiffExpr inverse() const;
    DiffExpr pow(int e) const;

    // Exact equality as rational functions (cross-multiplied).
    friend bool operator==(const DiffExpr& a, const DiffExpr& b);
    friend bool operator!=(const DiffExpr& a, const DiffExpr& b) { return !(a == b); }

    DiffExpr d_x() const;

    // var -> expr substitution applied to numerator and denominator factors.
    DiffExpr substitute(const std::vector<std::pair<VarId, DiffExpr>>& subs) const;

    std::optional<Rational> poly_degree() const;
    std::optional<int64_t> diff_weight() const;

    // True if every denominator factor equals f (up to unit) with total
    // exponent at most max_exp.
    bool denominator_divides(const Poly& f, int max_exp) const;

    std::string to_string() const;
    size_t hash() const;

    static DiffExpr from_parts(Poly num, std::map<Poly, int, PolyLess> den);

  private:
    Poly num_;
    std::map<Poly, int, PolyLess> den_;

    void reduce();
};

inline DiffExpr operator*(const Rational& c, const DiffExpr& e) { return e * c; }

// Rational part plus a sum of coeff * log(argument) terms. Arguments are
// non-constant, deduplicated, with nonzero coefficients.
class LogCombo {
  public:
    LogCombo() = default;
    explicit LogCombo(DiffExpr rational) : rational_(std::move(rational)) {}

    static LogCombo log_term(Rational coeff, DiffExpr arg);

    const DiffExpr& rational_part() const { return rational_; }
    const std::vector<std::pair<Rational, DiffExpr>>& logs() const { return logs_; }
    bool is_zero() const { return rational_.is_zero() && logs_.empty(); }

    friend LogCombo operator+(const LogCombo& a, const LogCombo& b);
    friend LogCombo operator-(const LogCombo& a, const LogCombo& b);
    LogCombo operator-() const;
    friend LogCombo operator*(const LogCombo& a, const Rational& c);

    // d/dx; log(A) contributes A'/A to the rational part, so the log list of
    // the derivative is empty.
    LogCombo d_x() const;
    DiffExpr d_x_rational() const { return d_x().rational_part(); }

    std::string to_string() const;

  private:
    DiffExpr rational_;
    std::vector<std::pair<Rational, DiffExpr>> logs_;

    void add_log(const Rational& c, const DiffExpr& arg);
};

}  // namespace stringforge
