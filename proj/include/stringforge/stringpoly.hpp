#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringforge/motzkin.hpp"
#include "stringforge/partition.hpp"
#include "stringforge/rational.hpp"

namespace stringforge {

// Value space of an operator applied to the generator family: Laurent
// monomials s^j r^(k/2) keyed by (s exponent, doubled r exponent).
struct SRLaurent {
    std::map<std::pair<int, int>, Rational> terms;

    void add(int s_exp, int r_exp2, const Rational& c);
    bool is_zero() const { return terms.empty(); }
    friend SRLaurent operator+(const SRLaurent& a, const SRLaurent& b);
    friend SRLaurent operator-(const SRLaurent& a, const SRLaurent& b);
    friend SRLaurent operator*(const SRLaurent& a, const SRLaurent& b);
    friend SRLaurent operator*(const SRLaurent& a, const Rational& c);
    friend bool operator==(const SRLaurent& a, const SRLaurent& b) {
        return a.terms == b.terms;
    }
    SRLaurent ds() const;            // d/ds
    SRLaurent dr() const;            // d/dr acting on r^(e2/2)
    SRLaurent shift_r(int e2) const; // multiply by r^(e2/2)
    static SRLaurent from_poly(const Poly& p);  // p in base vars s, r
    std::string to_string() const;
};

// [h^p] of the normalized generator (r^(1/2) h + s + r^(1/2) h^-1)^(J-1) and
// of the monic generator (h + s + r h^-1)^(J-1), in the half-power ring.
SRLaurent normalized_generator_coeff(int J, int p);
SRLaurent monic_generator_coeff(int J, int p);

// Normal-ordered noncommutative polynomial in ds, dr with coefficients
// Laurent in r^(1/2): terms r^(e2/2) ds^a dr^b, all coefficients to the left
// of all derivatives. dr and r do not commute: dr r = r dr + 1.
class OperatorPoly {
  public:
    struct Key {
        int e2;  // doubled r exponent of the coefficient
        int a;   // power of ds
        int b;   // power of dr
        auto operator<=>(const Key&) const = default;
    };

    OperatorPoly() = default;
    static OperatorPoly identity() { return term(0, 0, 0, Rational(1)); }
    static OperatorPoly term(int e2, int a, int b, Rational c);

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_dr_degree() const;

    void add_term(int e2, int a, int b, const Rational& c);

    friend OperatorPoly operator+(const OperatorPoly& x, const OperatorPoly& y);
    friend OperatorPoly operator-(const OperatorPoly& x, const OperatorPoly& y);
    // noncommutative product, x acting after y (x on the left)
    friend OperatorPoly operator*(const OperatorPoly& x, const OperatorPoly& y);
    friend OperatorPoly operator*(const OperatorPoly& x, const Rational& c);
    OperatorPoly operator-() const;
    OperatorPoly& operator+=(const OperatorPoly& o) { return *this = *this + o; }

    friend bool operator==(const OperatorPoly& x, const OperatorPoly& y) {
        return x.terms_ == y.terms_;
    }

    std::string to_string() const;

  private:
    std::map<Key, Rational> terms_;
};

// Generator-family targets, as polynomials in s, r:
//   target_a(J) = [h^0](h + s + r h^-1)^{J-1}
//   target_b(J) = [h^-1](h + s + r h^-1)^{J-1}
Poly target_a(int J);
Poly target_b(int J);

// op applied to target_a(J): derivatives act on the explicit polynomial,
// then the r^(e2/2) coefficients multiply.
SRLaurent apply(const OperatorPoly& op, int J);
SRLaurent apply_to(const OperatorPoly& op, const Poly& target);

// Bare residual of the second string equation: the (phi, phi) cell of the
// end-height -1 path sum, which is not an operator on the [h^0] target. The
// table records the zero operator there.
SRLaurent bare_residual_b(int J);

// Cell value of the string equation: apply(op, J), plus the bare residual for
// the (phi, phi) cell of variant B. Equals modified_string_poly for every
// cell of a verified table.
SRLaurent string_equation_cell(const OperatorPoly& op, const Partition& lambda,
                               const Partition& eta, int J, Variant v);

// Rewrites every dr^2 via r dr^2 = ds^2 - dr (the relation annihilating the
// [h^0] generator family), honoring dr r = r dr + 1, until every term has
// dr-degree <= 1. apply(result, J) == apply(op, J) for all J.
OperatorPoly reduce_mod_I(const OperatorPoly& op);
// Same for the [h^-1] family, whose relation is r dr^2 = ds^2.
OperatorPoly reduce_mod_I_bare(const OperatorPoly& op);

struct AnsatzExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitOptions {
    int e2_min = -2;
    int e2_max_extra = 2;  // e2 max = 2*(len(eta)+1) + this - 2
    int a_slack = 0;       // on top of |lambda|+|eta|+len(lambda)+len(eta)
    int j_fit = 16;
    int j_verify = 5;
    int widen_rounds = 2;
};

// The unique dr-degree <= 1 operator matching the modified string polynomial
// on every J, found by undetermined coefficients and over-verified on extra
// J values. Throws AnsatzExhausted / RankDeficient.
OperatorPoly string_operator(const Partition& lambda, const Partition& eta,
                             Variant v, const FitOptions& opts = {});

struct TableRow {
    Partition lambda, eta;
    OperatorPoly op_a, op_b;
};

// All rows with |lambda| + |eta| <= max_weight, cells generated in parallel.
std::vector<TableRow> generate_table(int max_weight, const FitOptions& opts = {});

// Hand-checked low-weight fixture rows, |lambda|+|eta| <= 3 (18 rows).
const std::vector<TableRow>& reference_table();

std::string table_to_text(const std::vector<TableRow>& rows);
std::string table_to_json(const std::vector<TableRow>& rows);

}  // namespace stringforge
