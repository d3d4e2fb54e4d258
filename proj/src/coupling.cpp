#include "stringforge/coupling.hpp"

#include <algorithm>
#include <sstream>

namespace stringforge {

CouplingKey operator*(const CouplingKey& a, const CouplingKey& b) {
    CouplingKey r;
    r.x2 = a.x2 + b.x2;
    uint32_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        uint32_t ja = a.t[i] >> 16, jb = b.t[j] >> 16;
        if (ja < jb)
            r.t.push_back(a.t[i++]);
        else if (jb < ja)
            r.t.push_back(b.t[j++]);
        else {
            r.t.push_back((ja << 16) | ((a.t[i] & 0xffff) + (b.t[j] & 0xffff)));
            ++i, ++j;
        }
    }
    while (i < a.t.size()) r.t.push_back(a.t[i++]);
    while (j < b.t.size()) r.t.push_back(b.t[j++]);
    return r;
}

bool operator<(const CouplingKey& a, const CouplingKey& b) {
    int da = a.t_degree(), db = b.t_degree();
    if (da != db) return da < db;
    uint32_t i = 0;
    while (i < a.t.size() && i < b.t.size()) {
        if (a.t[i] != b.t[i]) return a.t[i] < b.t[i];
        ++i;
    }
    if (a.t.size() != b.t.size()) return a.t.size() < b.t.size();
    return a.x2 < b.x2;
}

std::string CouplingKey::to_string() const {
    std::string s;
    for (uint32_t p : t) {
        if (!s.empty()) s += "*";
        s += "t" + std::to_string(p >> 16);
        if ((p & 0xffff) > 1) s += "^" + std::to_string(p & 0xffff);
    }
    if (x2 != 0) {
        if (!s.empty()) s += "*";
        s += "x";
        if (x2 != 2) {
            s += "^";
            if (x2 % 2 == 0)
                s += std::to_string(x2 / 2);
            else
                s += "(" + std::to_string(x2) + "/2)";
        }
    }
    return s.empty() ? "1" : s;
}

CouplingSeries::CouplingSeries(Rational c, int trunc) : trunc_(trunc) {
    if (!c.is_zero()) terms_[CouplingKey{}] = std::move(c);
}

CouplingSeries CouplingSeries::x_power(int x2, int trunc) {
    CouplingSeries s(Rational(0), trunc);
    s.trunc_ = trunc;
    CouplingKey k;
    k.x2 = x2;
    s.terms_[k] = Rational(1);
    return s;
}

CouplingSeries CouplingSeries::coupling(int j, int trunc) {
    CouplingSeries s(Rational(0), trunc);
    CouplingKey k;
    k.t.push_back((static_cast<uint32_t>(j) << 16) | 1);
    s.terms_[k] = Rational(1);
    return s;
}

CouplingSeries CouplingSeries::monomial(CouplingKey k, Rational c, int trunc) {
    CouplingSeries s(Rational(0), trunc);
    if (!c.is_zero() && k.t_degree() <= trunc) s.terms_[k] = std::move(c);
    return s;
}

Rational CouplingSeries::coeff(const CouplingKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational() : it->second;
}

void CouplingSeries::add_term(const CouplingKey& k, const Rational& c) {
    if (c.is_zero() || k.t_degree() > trunc_) return;
    auto [it, fresh] = terms_.try_emplace(k, Rational());
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

CouplingSeries operator+(const CouplingSeries& a, const CouplingSeries& b) {
    CouplingSeries r = a;
    r.trunc_ = std::min(a.trunc_, b.trunc_);
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = it->first.t_degree() > r.trunc_ ? r.terms_.erase(it) : std::next(it);
    return r;
}

CouplingSeries CouplingSeries::operator-() const {
    CouplingSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

CouplingSeries operator-(const CouplingSeries& a, const CouplingSeries& b) {
    return a + (-b);
}

CouplingSeries operator*(const CouplingSeries& a, const CouplingSeries& b) {
    CouplingSeries r;
    r.trunc_ = std::min(a.trunc_, b.trunc_);
    for (const auto& [ka, ca] : a.terms_) {
        if (ka.t_degree() > r.trunc_) continue;
        for (const auto& [kb, cb] : b.terms_) {
            if (ka.t_degree() + kb.t_degree() > r.trunc_) continue;
            r.add_term(ka * kb, ca * cb);
        }
    }
    return r;
}

CouplingSeries operator*(const CouplingSeries& a, const Rational& c) {
    CouplingSeries r;
    r.trunc_ = a.trunc_;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : a.terms_) r.terms_.emplace(k, v * c);
    return r;
}

CouplingSeries CouplingSeries::d_x() const {
    CouplingSeries r;
    r.trunc_ = trunc_;
    for (const auto& [k, c] : terms_) {
        if (k.x2 == 0) continue;
        CouplingKey nk = k;
        nk.x2 -= 2;
        r.add_term(nk, c * Rational(k.x2, 2));
    }
    return r;
}

CouplingSeries CouplingSeries::antiderivative_x() const {
    CouplingSeries r;
    r.trunc_ = trunc_;
    for (const auto& [k, c] : terms_) {
        if (k.x2 == -2)
            throw NonIntegrableMonomial("antiderivative of x^-1 monomial " +
                                        k.to_string());
        CouplingKey nk = k;
        nk.x2 += 2;
        r.add_term(nk, c / Rational(nk.x2, 2));
    }
    return r;
}

std::pair<CouplingKey, Rational> CouplingSeries::leading_slice0() const {
    const CouplingKey* found = nullptr;
    for (const auto& [k, c] : terms_) {
        if (k.t_degree() == 0) {
            if (found)
                throw DivisionByZeroSeries(
                    "series has a non-monomial coupling-degree-0 slice");
            found = &k;
        }
    }
    if (!found)
        throw DivisionByZeroSeries("series has zero leading coefficient");
    return {*found, terms_.at(*found)};
}

CouplingSeries CouplingSeries::inverse() const {
    auto [lk, lc] = leading_slice0();
    // this = lc x^e (1 + w), w of positive coupling degree
    CouplingKey inv_k;
    inv_k.x2 = -lk.x2;
    CouplingSeries lead_inv = monomial(inv_k, lc.inverse(), trunc_);
    CouplingSeries w = *this * lead_inv - CouplingSeries(Rational(1), trunc_);
    CouplingSeries acc(Rational(1), trunc_);
    CouplingSeries pw(Rational(1), trunc_);
    for (int k = 1; k <= trunc_; ++k) {
        pw *= w;
        if (pw.is_zero()) break;
        acc += (k % 2 ? -pw : pw);
    }
    return acc * lead_inv;
}

CouplingSeries CouplingSeries::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    CouplingSeries r(Rational(1), trunc_);
    CouplingSeries b = *this;
    uint32_t k = static_cast<uint32_t>(e);
    while (k) {
        if (k & 1) r *= b;
        if (k >>= 1) b *= b;
    }
    return r;
}

CouplingSeries CouplingSeries::log() const {
    auto [lk, lc] = leading_slice0();
    if (lk.x2 != 0 || !lc.is_one())
        throw DivisionByZeroSeries("log argument does not lead with 1");
    CouplingSeries w = *this - CouplingSeries(Rational(1), trunc_);
    CouplingSeries acc;
    acc.trunc_ = trunc_;
    CouplingSeries pw(Rational(1), trunc_);
    for (int k = 1; k <= trunc_; ++k) {
        pw *= w;
        if (pw.is_zero()) break;
        CouplingSeries term = pw * Rational(k % 2 ? 1 : -1, k);
        acc += term;
    }
    return acc;
}

CouplingSeries CouplingSeries::truncated(int new_trunc) const {
    CouplingSeries r;
    r.trunc_ = new_trunc;
    for (const auto& [k, c] : terms_)
        if (k.t_degree() <= new_trunc) r.terms_.emplace(k, c);
    return r;
}

CouplingSeries CouplingSeries::substitute_coupling(int j, const Rational& value) const {
    CouplingSeries r;
    r.trunc_ = trunc_;
    for (const auto& [k, c] : terms_) {
        int e = k.t_exp(j);
        CouplingKey nk;
        nk.x2 = k.x2;
        for (uint32_t p : k.t)
            if (static_cast<int>(p >> 16) != j) nk.t.push_back(p);
        r.add_term(nk, c * value.pow(e));
    }
    return r;
}

std::map<int, Rational> CouplingSeries::x_slice(const std::map<int, int>& profile) const {
    int total = 0;
    for (const auto& [j, n] : profile) total += n;
    if (total > trunc_)
        throw TruncationExceeded("profile degree exceeds series truncation");
    CouplingKey want;
    for (const auto& [j, n] : profile)
        if (n > 0) want.t.push_back((static_cast<uint32_t>(j) << 16) | n);
    std::map<int, Rational> out;
    for (const auto& [k, c] : terms_)
        if (k.t == want.t) out[k.x2] = c;
    return out;
}

std::string CouplingSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
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
        std::string mono = k.to_string();
        if (mono == "1")
            s += cc.to_string();
        else if (cc.is_one())
            s += mono;
        else
            s += cc.to_string() + "*" + mono;
    }
    return s;
}

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

}  // namespace

Potential Potential::parse(std::string_view text) {
    Potential V;
    V.degree = 2;
    std::string_view s = text;
    bool first = true;
    while (true) {
        skip_ws(s);
        if (s.empty()) break;
        int sign = 1;
        if (s.front() == '+' || s.front() == '-') {
            sign = s.front() == '-' ? -1 : 1;
            s.remove_prefix(1);
            skip_ws(s);
        } else if (!first) {
            throw std::invalid_argument("potential: expected '+' or '-'");
        }
        first = false;
        // coefficient: number, fraction, decimal, or coupling symbol tN
        bool symbolic = false;
        int sym_index = 0;
        Rational coeff(1);
        if (!s.empty() && s.front() == 't') {
            size_t i = 1;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == 1) throw std::invalid_argument("potential: bad coupling symbol");
            sym_index = std::stoi(std::string(s.substr(1, i - 1)));
            symbolic = true;
            s.remove_prefix(i);
        } else {
            size_t i = 0;
            while (i < s.size() &&
                   (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' ||
                    s[i] == '/'))
                ++i;
            if (i == 0) throw std::invalid_argument("potential: expected coefficient");
            coeff = Rational::parse(std::string(s.substr(0, i)));
            s.remove_prefix(i);
        }
        skip_ws(s);
        if (s.empty() || s.front() != '*')
            throw std::invalid_argument("potential: expected '*l^k'");
        s.remove_prefix(1);
        skip_ws(s);
        if (s.empty() || (s.front() != 'l' && s.front() != 'L'))
            throw std::invalid_argument("potential: expected 'l'");
        s.remove_prefix(1);
        skip_ws(s);
        int power = 1;
        if (!s.empty() && s.front() == '^') {
            s.remove_prefix(1);
            skip_ws(s);
            size_t i = 0;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == 0) throw std::invalid_argument("potential: expected exponent");
            power = std::stoi(std::string(s.substr(0, i)));
            s.remove_prefix(i);
        }
        if (power < 1) throw std::invalid_argument("potential: exponent must be >= 1");
        V.degree = std::max(V.degree, power);
        if (symbolic) {
            if (sym_index != power)
                throw std::invalid_argument(
                    "potential: coupling index must match the power (t" +
                    std::to_string(sym_index) + " on l^" + std::to_string(power) +
                    ")");
            if (sign < 0)
                throw std::invalid_argument(
                    "potential: negative symbolic coupling; fold the sign into the "
                    "value instead");
            V.couplings[power] = std::nullopt;
        } else {
            Rational value = coeff * Rational(sign);
            if (power == 2 && value == Rational(1, 2)) continue;  // the implicit term
            auto [it, fresh] = V.couplings.try_emplace(power, value);
            if (!fresh)
                throw std::invalid_argument("potential: duplicate coupling for l^" +
                                            std::to_string(power));
        }
    }
    return V;
}

std::string Potential::to_string() const {
    std::string s = "1/2*l^2";
    for (const auto& [j, v] : couplings) {
        s += " + ";
        s += v ? v->to_string() : ("t" + std::to_string(j));
        s += "*l^" + std::to_string(j);
    }
    return s;
}

std::vector<int> Potential::coupling_indices() const {
    std::vector<int> out;
    for (const auto& [j, v] : couplings) out.push_back(j);
    return out;
}

bool Potential::has_numeric() const {
    for (const auto& [j, v] : couplings)
        if (v) return true;
    return false;
}

Potential Potential::symbolic() const {
    Potential s;
    s.degree = degree;
    for (const auto& [j, v] : couplings) s.couplings[j] = std::nullopt;
    return s;
}

}  // namespace stringforge
