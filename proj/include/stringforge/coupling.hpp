#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "stringforge/rational.hpp"
#include "stringforge/smallvec.hpp"

namespace stringforge {

struct DivisionByZeroSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonIntegrableMonomial : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monomial in the coupling symbols t_j times a half-integer power of x.
// t holds packed (j << 16 | exp) ascending in j; x2 is the doubled x
// exponent (the scaling relations make every exponent a half-integer).
struct CouplingKey {
    SmallVec<uint32_t, 4> t;
    int x2 = 0;

    int t_degree() const {
        int d = 0;
        for (uint32_t p : t) d += p & 0xffff;
        return d;
    }
    int t_exp(int j) const {
        for (uint32_t p : t)
            if (static_cast<int>(p >> 16) == j) return p & 0xffff;
        return 0;
    }
    friend CouplingKey operator*(const CouplingKey& a, const CouplingKey& b);
    friend bool operator==(const CouplingKey& a, const CouplingKey& b) {
        return a.x2 == b.x2 && a.t == b.t;
    }
    friend bool operator<(const CouplingKey& a, const CouplingKey& b);
    std::string to_string() const;
};

// Truncated power series in the couplings with exact rational coefficients:
// terms of total coupling degree <= trunc are exact, higher ones dropped.
class CouplingSeries {
  public:
    CouplingSeries() = default;
    explicit CouplingSeries(Rational c, int trunc = kDefaultTrunc);
    explicit CouplingSeries(int64_t c) : CouplingSeries(Rational(c)) {}

    static constexpr int kDefaultTrunc = 6;

    static CouplingSeries x_power(int x2, int trunc = kDefaultTrunc);
    static CouplingSeries coupling(int j, int trunc = kDefaultTrunc);
    static CouplingSeries monomial(CouplingKey k, Rational c,
                                   int trunc = kDefaultTrunc);

    const std::map<CouplingKey, Rational>& terms() const { return terms_; }
    int truncation() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const CouplingKey& k) const;

    friend CouplingSeries operator+(const CouplingSeries& a, const CouplingSeries& b);
    friend CouplingSeries operator-(const CouplingSeries& a, const CouplingSeries& b);
    friend CouplingSeries operator*(const CouplingSeries& a, const CouplingSeries& b);
    friend CouplingSeries operator*(const CouplingSeries& a, const Rational& c);
    CouplingSeries operator-() const;
    CouplingSeries& operator+=(const CouplingSeries& o) { return *this = *this + o; }
    CouplingSeries& operator-=(const CouplingSeries& o) { return *this = *this - o; }
    CouplingSeries& operator*=(const CouplingSeries& o) { return *this = *this * o; }

    friend bool operator==(const CouplingSeries& a, const CouplingSeries& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const CouplingSeries& a, const CouplingSeries& b) {
        return !(a == b);
    }

    CouplingSeries d_x() const;
    // termwise antiderivative with lower limit 0; throws NonIntegrableMonomial
    // on x^-1 monomials
    CouplingSeries antiderivative_x() const;

    // Requires the coupling-degree-0 slice to be a nonzero monomial c*x^e.
    CouplingSeries inverse() const;
    CouplingSeries pow(int e) const;
    // log of a series with leading slice exactly 1
    CouplingSeries log() const;

    CouplingSeries truncated(int new_trunc) const;
    // substitute a numeric value for coupling j
    CouplingSeries substitute_coupling(int j, const Rational& value) const;

    // coefficient of prod t_j^{n_j} as a map x2 -> coefficient
    std::map<int, Rational> x_slice(const std::map<int, int>& profile) const;

    std::string to_string() const;

  private:
    std::map<CouplingKey, Rational> terms_;
    int trunc_ = kDefaultTrunc;

    void add_term(const CouplingKey& k, const Rational& c);
    std::pair<CouplingKey, Rational> leading_slice0() const;
};

inline CouplingSeries operator*(const Rational& c, const CouplingSeries& s) {
    return s * c;
}

// Polynomial potential: the l^2/2 term is implicit and always present;
// couplings t_j for 1 <= j <= degree, each symbolic or a fixed rational.
struct Potential {
    int degree = 2;
    std::map<int, std::optional<Rational>> couplings;  // nullopt = symbolic

    // grammar: "0.5*l^2 + t3*l^3 + 1/4*l^4"; the 0.5*l^2 term is recognized
    // as the implicit Gaussian part
    static Potential parse(std::string_view text);
    std::string to_string() const;
    bool is_gaussian() const { return couplings.empty(); }
    std::vector<int> coupling_indices() const;
    bool has_numeric() const;
    // same couplings, all symbolic; series computations run in the symbolic
    // grading, numeric values substitute at output time
    Potential symbolic() const;
};

}  // namespace stringforge
