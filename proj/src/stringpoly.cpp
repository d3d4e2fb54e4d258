#include "stringforge/stringpoly.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stringforge {

void SRLaurent::add(int s_exp, int r_exp2, const Rational& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(s_exp, r_exp2);
    auto [it, fresh] = terms.try_emplace(key, Rational());
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

SRLaurent operator+(const SRLaurent& a, const SRLaurent& b) {
    SRLaurent r = a;
    for (const auto& [k, c] : b.terms) r.add(k.first, k.second, c);
    return r;
}

SRLaurent operator-(const SRLaurent& a, const SRLaurent& b) {
    SRLaurent r = a;
    for (const auto& [k, c] : b.terms) r.add(k.first, k.second, -c);
    return r;
}

SRLaurent operator*(const SRLaurent& a, const Rational& c) {
    SRLaurent r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : a.terms) r.terms.emplace(k, v * c);
    return r;
}

SRLaurent operator*(const SRLaurent& a, const SRLaurent& b) {
    SRLaurent r;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

SRLaurent SRLaurent::ds() const {
    SRLaurent r;
    for (const auto& [k, c] : terms)
        if (k.first > 0) r.add(k.first - 1, k.second, c * Rational(k.first));
    return r;
}

SRLaurent SRLaurent::dr() const {
    SRLaurent r;
    for (const auto& [k, c] : terms)
        if (k.second != 0) r.add(k.first, k.second - 2, c * Rational(k.second, 2));
    return r;
}

SRLaurent SRLaurent::shift_r(int e2) const {
    SRLaurent r;
    for (const auto& [k, c] : terms)
        r.terms.emplace(std::make_pair(k.first, k.second + e2), c);
    return r;
}

SRLaurent SRLaurent::from_poly(const Poly& p) {
    SRLaurent out;
    for (const auto& t : p.terms()) {
        int se = static_cast<int>(t.mono.exp_of(make_var(VarBase::S)));
        int re = static_cast<int>(t.mono.exp_of(make_var(VarBase::R)));
        out.add(se, 2 * re, t.coeff);
    }
    return out;
}

std::string SRLaurent::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms) {
        if (!s.empty()) s += " + ";
        s += c.to_string();
        if (k.first) s += "*s^" + std::to_string(k.first);
        if (k.second) {
            s += "*r^";
            if (k.second % 2 == 0)
                s += std::to_string(k.second / 2);
            else
                s += "(" + std::to_string(k.second) + "/2)";
        }
    }
    return s;
}

OperatorPoly OperatorPoly::term(int e2, int a, int b, Rational c) {
    OperatorPoly p;
    p.add_term(e2, a, b, c);
    return p;
}

void OperatorPoly::add_term(int e2, int a, int b, const Rational& c) {
    if (c.is_zero()) return;
    Key k{e2, a, b};
    auto [it, fresh] = terms_.try_emplace(k, Rational());
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int OperatorPoly::max_dr_degree() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.b);
    return m;
}

OperatorPoly operator+(const OperatorPoly& x, const OperatorPoly& y) {
    OperatorPoly r = x;
    for (const auto& [k, c] : y.terms_) r.add_term(k.e2, k.a, k.b, c);
    return r;
}

OperatorPoly OperatorPoly::operator-() const {
    OperatorPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

OperatorPoly operator-(const OperatorPoly& x, const OperatorPoly& y) {
    return x + (-y);
}

OperatorPoly operator*(const OperatorPoly& x, const Rational& c) {
    OperatorPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : x.terms_) r.terms_.emplace(k, v * c);
    return r;
}

// (r^g1 ds^a1 dr^b1)(r^g2 ds^a2 dr^b2): commute dr^b1 past r^g2 with
// dr^b r^g = sum_k C(b,k) g(g-1)...(g-k+1) r^(g-k) dr^(b-k).
OperatorPoly operator*(const OperatorPoly& x, const OperatorPoly& y) {
    OperatorPoly out;
    for (const auto& [kx, cx] : x.terms_) {
        for (const auto& [ky, cy] : y.terms_) {
            Rational gamma(ky.e2, 2);
            Rational binom(1), falling(1);
            for (int k = 0; k <= kx.b; ++k) {
                if (k > 0) {
                    binom = binom * Rational(kx.b - k + 1) / Rational(k);
                    falling *= gamma - Rational(k - 1);
                }
                out.add_term(kx.e2 + ky.e2 - 2 * k, kx.a + ky.a, kx.b - k + ky.b,
                             cx * cy * binom * falling);
            }
        }
    }
    return out;
}

std::string OperatorPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
        auto rank = [](const Key& k) {
            return std::tuple(-(k.a + k.b), -k.a, -k.e2);
        };
        return rank(x.first) < rank(y.first);
    });
    std::string s;
    for (const auto& [k, c] : ordered) {
        Rational cc = c;
        if (s.empty()) {
            if (cc.is_negative()) {
                s += "-";
                cc = -cc;
            }
        } else {
            s += cc.is_negative() ? " - " : " + ";
            if (cc.is_negative()) cc = -cc;
        }
        std::vector<std::string> factors;
        if (!cc.is_one() || (k.e2 == 0 && k.a == 0 && k.b == 0))
            factors.push_back(cc.to_string());
        if (k.e2 != 0) {
            if (k.e2 == 2)
                factors.push_back("r");
            else if (k.e2 % 2 == 0)
                factors.push_back("r^" + std::to_string(k.e2 / 2));
            else
                factors.push_back("r^(" + std::to_string(k.e2) + "/2)");
        }
        if (k.a > 0)
            factors.push_back(k.a == 1 ? "ds" : "ds^" + std::to_string(k.a));
        if (k.b > 0)
            factors.push_back(k.b == 1 ? "dr" : "dr^" + std::to_string(k.b));
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "*";
            s += factors[i];
        }
    }
    return s;
}

namespace {

Rational trinom(int n, int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i + j + k != n) return Rational();
    return Rational::factorial(n) /
           (Rational::factorial(i) * Rational::factorial(j) * Rational::factorial(k));
}

}  // namespace

Poly target_a(int J) {
    Poly out;
    int n = J - 1;
    for (int k = 0; 2 * k <= n; ++k) {
        Monomial m = Monomial::var(make_var(VarBase::S), n - 2 * k) *
                     Monomial::var(make_var(VarBase::R), k);
        out += Poly::term(m, trinom(n, k, n - 2 * k, k));
    }
    return out;
}

Poly target_b(int J) {
    Poly out;
    int n = J - 1;
    for (int k = 1; 2 * k - 1 <= n; ++k) {
        Monomial m = Monomial::var(make_var(VarBase::S), n - 2 * k + 1) *
                     Monomial::var(make_var(VarBase::R), k);
        out += Poly::term(m, trinom(n, k - 1, n - 2 * k + 1, k));
    }
    return out;
}

SRLaurent normalized_generator_coeff(int J, int p) {
    // sum over (i, j, k) with i - k = p of T(J-1; i, j, k) s^j r^((i+k)/2)
    SRLaurent out;
    int n = J - 1;
    for (int i = 0; i <= n; ++i) {
        int k = i - p;
        int j = n - i - k;
        if (k < 0 || j < 0) continue;
        out.add(j, i + k, trinom(n, i, j, k));
    }
    return out;
}

SRLaurent monic_generator_coeff(int J, int p) {
    SRLaurent out;
    int n = J - 1;
    for (int i = 0; i <= n; ++i) {
        int k = i - p;
        int j = n - i - k;
        if (k < 0 || j < 0) continue;
        out.add(j, 2 * k, trinom(n, i, j, k));
    }
    return out;
}

SRLaurent apply_to(const OperatorPoly& op, const Poly& target) {
    SRLaurent out;
    for (const auto& [k, c] : op.terms()) {
        for (const auto& t : target.terms()) {
            int j = static_cast<int>(t.mono.exp_of(make_var(VarBase::S)));
            int rr = static_cast<int>(t.mono.exp_of(make_var(VarBase::R)));
            if (j < k.a || rr < k.b) continue;
            Rational fall(1);
            for (int i = 0; i < k.a; ++i) fall *= Rational(j - i);
            for (int i = 0; i < k.b; ++i) fall *= Rational(rr - i);
            out.add(j - k.a, 2 * (rr - k.b) + k.e2, c * t.coeff * fall);
        }
    }
    return out;
}

SRLaurent apply(const OperatorPoly& op, int J) { return apply_to(op, target_a(J)); }

SRLaurent bare_residual_b(int J) { return SRLaurent::from_poly(target_b(J)); }

SRLaurent string_equation_cell(const OperatorPoly& op, const Partition& lambda,
                               const Partition& eta, int J, Variant v) {
    SRLaurent out = apply(op, J);
    if (v == Variant::B && lambda.empty() && eta.empty())
        out = out + bare_residual_b(J);
    return out;
}

namespace {

OperatorPoly reduce_with_rule(const OperatorPoly& op, const OperatorPoly& dr2_rule) {
    OperatorPoly cur = op;
    while (true) {
        bool found = false;
        OperatorPoly::Key key{};
        Rational coeff;
        for (const auto& [k, c] : cur.terms()) {
            if (k.b >= 2) {
                key = k;
                coeff = c;
                found = true;
                break;
            }
        }
        if (!found) return cur;
        OperatorPoly head = OperatorPoly::term(key.e2, key.a, key.b - 2, coeff);
        cur = (cur - OperatorPoly::term(key.e2, key.a, key.b, coeff)) +
              head * dr2_rule;
    }
}

}  // namespace

OperatorPoly reduce_mod_I(const OperatorPoly& op) {
    // dr^2 = r^-1 ds^2 - r^-1 dr on the [h^0] family
    OperatorPoly rule = OperatorPoly::term(-2, 2, 0, Rational(1)) +
                        OperatorPoly::term(-2, 0, 1, Rational(-1));
    return reduce_with_rule(op, rule);
}

OperatorPoly reduce_mod_I_bare(const OperatorPoly& op) {
    // dr^2 = r^-1 ds^2 on the [h^-1] family
    return reduce_with_rule(op, OperatorPoly::term(-2, 2, 0, Rational(1)));
}

namespace {

// Gauss-Jordan accumulator over Q for the undetermined-coefficient fit.
class LinearSystem {
  public:
    explicit LinearSystem(size_t n) : n_(n) {}

    // returns false on an inconsistent row
    bool insert(std::vector<Rational> row) {
        for (auto& [col, prow] : pivots_) {
            if (!row[col].is_zero()) {
                Rational f = row[col];
                for (size_t i = 0; i <= n_; ++i)
                    if (!prow[i].is_zero()) row[i] -= f * prow[i];
            }
        }
        size_t lead = n_;
        for (size_t i = 0; i < n_; ++i)
            if (!row[i].is_zero()) {
                lead = i;
                break;
            }
        if (lead == n_) return row[n_].is_zero();
        Rational inv = row[lead].inverse();
        for (size_t i = 0; i <= n_; ++i)
            if (!row[i].is_zero()) row[i] *= inv;
        for (auto& [col, prow] : pivots_) {
            if (!prow[lead].is_zero()) {
                Rational f = prow[lead];
                for (size_t i = 0; i <= n_; ++i)
                    if (!row[i].is_zero()) prow[i] -= f * row[i];
            }
        }
        pivots_.emplace_back(lead, std::move(row));
        return true;
    }

    size_t rank() const { return pivots_.size(); }
    bool full_rank() const { return pivots_.size() == n_; }

    std::vector<Rational> solution() const {
        std::vector<Rational> sol(n_);
        for (const auto& [col, row] : pivots_) sol[col] = row[n_];
        return sol;
    }

  private:
    size_t n_;
    std::vector<std::pair<size_t, std::vector<Rational>>> pivots_;
};

std::vector<OperatorPoly::Key> make_ansatz(const Partition& lambda,
                                           const Partition& eta,
                                           const FitOptions& opts, int widen) {
    std::vector<OperatorPoly::Key> basis;
    int a_max = lambda.weight() + eta.weight() + lambda.len() + eta.len() +
                opts.a_slack + 2 * widen;
    // generated tables through weight 4 use r exponents in
    // [-(len(eta) - 1), len(eta) + 2]; the widening rounds cover anything
    // beyond that
    int e2_lo = opts.e2_min - 2 * std::max(0, eta.len() - 2) - 2 * widen;
    int e2_hi = 2 * (eta.len() + 1) + opts.e2_max_extra + 2 * widen;
    for (int e2 = e2_lo; e2 <= e2_hi; ++e2)
        for (int a = 0; a <= a_max; ++a)
            for (int b = 0; b <= 1; ++b) basis.push_back({e2, a, b});
    return basis;
}

// fit target for one cell; the bare residual is subtracted from the (phi,
// phi) cell of variant B, whose operator is the zero operator by convention
SRLaurent cell_target(const Partition& lambda, const Partition& eta, int J,
                      Variant v) {
    Poly p = extract_jet_cell(
        motzkin_sum_transfer(J, v, lambda.weight() + eta.weight()), lambda, eta);
    SRLaurent t = SRLaurent::from_poly(p);
    if (v == Variant::B && lambda.empty() && eta.empty())
        t = t - bare_residual_b(J);
    return t;
}

}  // namespace

OperatorPoly string_operator(const Partition& lambda, const Partition& eta,
                             Variant v, const FitOptions& opts) {
    std::string cell = "(" + lambda.to_string() + ", " + eta.to_string() + ", " +
                       (v == Variant::A ? "a" : "b") + ")";
    for (int widen = 0; widen <= opts.widen_rounds; ++widen) {
        if (widen > 0)
            std::fprintf(stderr, "string_operator: widening ansatz for %s (round %d)\n",
                         cell.c_str(), widen);
        std::vector<OperatorPoly::Key> basis = make_ansatz(lambda, eta, opts, widen);
        const size_t n = basis.size();
        // enough equations for the basis: roughly J/2 + a_max monomial rows
        // arrive per J value, so rank n fills well inside this range
        const int j_hi = std::max<int>(opts.j_fit, 2 + static_cast<int>(n) / 8) +
                         16 * widen;

        LinearSystem sys(n);
        bool inconsistent = false;
        int j_fitted = 0;
        for (int J = 1; J <= j_hi && !sys.full_rank() && !inconsistent; ++J) {
            j_fitted = J;
            Poly tgt = target_a(J);
            std::vector<SRLaurent> actions(n);
            for (size_t i = 0; i < n; ++i)
                actions[i] = apply_to(
                    OperatorPoly::term(basis[i].e2, basis[i].a, basis[i].b,
                                       Rational(1)),
                    tgt);
            SRLaurent rhs = cell_target(lambda, eta, J, v);
            std::map<std::pair<int, int>, size_t> monos;
            auto note = [&](const SRLaurent& t) {
                for (const auto& [k, c] : t.terms) monos.try_emplace(k, monos.size());
            };
            for (const auto& a : actions) note(a);
            note(rhs);
            for (const auto& [mono, idx] : monos) {
                std::vector<Rational> row(n + 1);
                for (size_t i = 0; i < n; ++i) {
                    auto it = actions[i].terms.find(mono);
                    if (it != actions[i].terms.end()) row[i] = it->second;
                }
                auto it = rhs.terms.find(mono);
                if (it != rhs.terms.end()) row[n] = it->second;
                if (!sys.insert(std::move(row))) {
                    inconsistent = true;
                    break;
                }
                if (sys.full_rank()) break;
            }
        }
        if (inconsistent) {
            if (widen == opts.widen_rounds)
                throw AnsatzExhausted("string_operator: no operator in ansatz for " +
                                      cell);
            continue;
        }
        if (!sys.full_rank()) {
            if (widen == opts.widen_rounds)
                throw RankDeficient("string_operator: underdetermined fit for " +
                                    cell + " (rank " + std::to_string(sys.rank()) +
                                    " of " + std::to_string(n) + ")");
            continue;
        }
        std::vector<Rational> sol = sys.solution();
        OperatorPoly op;
        for (size_t i = 0; i < n; ++i)
            op.add_term(basis[i].e2, basis[i].a, basis[i].b, sol[i]);
        // every fitted J in full, then extra J values beyond the fit range
        bool ok = true;
        for (int J = 1; ok && J <= j_fitted + opts.j_verify; ++J)
            if (!(apply(op, J) == cell_target(lambda, eta, J, v))) ok = false;
        if (!ok) {
            if (widen == opts.widen_rounds)
                throw AnsatzExhausted(
                    "string_operator: verification failed beyond fit range for " +
                    cell);
            continue;
        }
        return op;
    }
    throw AnsatzExhausted("string_operator: exhausted widen rounds for " + cell);
}

std::vector<TableRow> generate_table(int max_weight, const FitOptions& opts) {
    auto pairs = Partition::all_pairs(max_weight);
    std::vector<TableRow> rows(pairs.size());
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < pairs.size(); ++i) {
        try {
            rows[i].lambda = pairs[i].first;
            rows[i].eta = pairs[i].second;
            rows[i].op_a =
                string_operator(pairs[i].first, pairs[i].second, Variant::A, opts);
            rows[i].op_b =
                string_operator(pairs[i].first, pairs[i].second, Variant::B, opts);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!err) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
    return rows;
}

std::string table_to_text(const std::vector<TableRow>& rows) {
    size_t wl = 6, we = 6, wa = 12;
    for (const auto& r : rows) {
        wl = std::max(wl, r.lambda.to_string().size());
        we = std::max(we, r.eta.to_string().size());
        wa = std::max(wa, r.op_a.to_string().size());
    }
    std::ostringstream os;
    auto pad = [](const std::string& s, size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    os << pad("lambda", wl) << "  " << pad("eta", we) << "  " << pad("P(a)", wa)
       << "  P(b)\n";
    for (const auto& r : rows)
        os << pad(r.lambda.to_string(), wl) << "  " << pad(r.eta.to_string(), we)
           << "  " << pad(r.op_a.to_string(), wa) << "  " << r.op_b.to_string()
           << "\n";
    return os.str();
}

std::string table_to_json(const std::vector<TableRow>& rows) {
    nlohmann::json out;
    out["schema_version"] = 1;
    out["rows"] = nlohmann::json::array();
    auto op_terms = [](const OperatorPoly& op) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [k, c] : op.terms()) {
            terms.push_back({{"r_exp_half", k.e2},
                             {"ds", k.a},
                             {"dr", k.b},
                             {"coeff", c.to_string()}});
        }
        return terms;
    };
    for (const auto& r : rows) {
        for (Variant v : {Variant::A, Variant::B}) {
            nlohmann::json row;
            row["lambda"] = r.lambda.parts();
            row["eta"] = r.eta.parts();
            row["variant"] = v == Variant::A ? "a" : "b";
            row["terms"] = op_terms(v == Variant::A ? r.op_a : r.op_b);
            out["rows"].push_back(std::move(row));
        }
    }
    return out.dump(2);
}

const std::vector<TableRow>& reference_table() {
    static const std::vector<TableRow> rows = [] {
        auto T = [](int e2, int a, int b, int64_t n, int64_t d) {
            return OperatorPoly::term(e2, a, b, Rational(n, d));
        };
        std::vector<TableRow> t;
        auto add = [&](Partition l, Partition e, OperatorPoly a, OperatorPoly b) {
            t.push_back({std::move(l), std::move(e), std::move(a), std::move(b)});
        };
        OperatorPoly zero;
        add({}, {}, OperatorPoly::identity(), zero);
        add({1}, {}, zero, T(2, 0, 1, -1, 2));
        add({}, {1}, T(0, 0, 1, 1, 2), zero);
        add({2}, {}, T(2, 1, 1, 1, 6), T(2, 2, 0, 1, 6) + T(2, 0, 1, 1, 12));
        add({1, 1}, {}, T(2, 2, 1, 1, 12), T(2, 3, 0, 1, 12) + T(2, 1, 1, 1, 12));
        add({1}, {1}, T(0, 3, 0, 1, 6), T(2, 2, 1, 1, 6));
        add({}, {2}, T(0, 2, 0, 1, 6) + T(0, 0, 1, 1, 12), T(2, 1, 1, 1, 6));
        add({}, {1, 1},
            T(-2, 2, 0, 1, 12) + T(-2, 0, 1, -1, 12) + T(0, 2, 1, 1, 12),
            T(0, 3, 0, 1, 12) + T(0, 1, 1, -1, 12));
        add({3}, {}, zero, T(2, 2, 0, -1, 12));
        add({2, 1}, {}, zero, T(2, 3, 0, -1, 6));
        add({1, 1, 1}, {}, zero, T(2, 4, 0, -1, 24));
        add({2}, {1}, T(0, 3, 0, 1, 12), T(2, 2, 1, -1, 12));
        add({1, 1}, {1}, T(0, 4, 0, 1, 24), T(2, 3, 1, -1, 12));
        add({1}, {2}, T(0, 3, 0, 1, 12), T(2, 2, 1, -1, 12));
        add({1}, {1, 1}, T(0, 3, 1, 1, 12), T(0, 4, 0, -1, 24) + T(0, 2, 1, 1, 24));
        add({}, {3}, T(0, 2, 0, 1, 12), zero);
        add({}, {2, 1}, T(0, 2, 1, 1, 6), zero);
        add({}, {1, 1, 1}, T(-2, 4, 0, 1, 24) + T(-2, 2, 1, -1, 24), zero);
        return t;
    }();
    return rows;
}

}  // namespace stringforge
