#include "stringforge/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stringforge {

std::string var_name(VarId v) {
    if (v == VAR_X) return "x";
    const char* base = nullptr;
    switch (var_base(v)) {
        case VarBase::U: base = "u"; break;
        case VarBase::Z: base = "z"; break;
        case VarBase::S: base = "s"; break;
        case VarBase::R: base = "r"; break;
        default: base = "?"; break;
    }
    unsigned k = var_order(v);
    std::string s = base;
    if (k <= 3)
        s.append(k, '\'');
    else
        s += "^(" + std::to_string(k) + ")";
    return s;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    uint32_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        uint32_t va = a.e[i] >> 16, vb = b.e[j] >> 16;
        if (va < vb) {
            r.e.push_back(a.e[i++]);
        } else if (vb < va) {
            r.e.push_back(b.e[j++]);
        } else {
            r.e.push_back((va << 16) | ((a.e[i] & 0xffff) + (b.e[j] & 0xffff)));
            ++i, ++j;
        }
    }
    while (i < a.e.size()) r.e.push_back(a.e[i++]);
    while (j < b.e.size()) r.e.push_back(b.e[j++]);
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& a, const Monomial& b) {
    Monomial r;
    uint32_t i = 0, j = 0;
    while (j < b.e.size()) {
        uint32_t vb = b.e[j] >> 16;
        while (i < a.e.size() && (a.e[i] >> 16) < vb) r.e.push_back(a.e[i++]);
        if (i == a.e.size() || (a.e[i] >> 16) != vb) return std::nullopt;
        uint32_t ea = a.e[i] & 0xffff, eb = b.e[j] & 0xffff;
        if (ea < eb) return std::nullopt;
        if (ea > eb) r.e.push_back((vb << 16) | (ea - eb));
        ++i, ++j;
    }
    while (i < a.e.size()) r.e.push_back(a.e[i++]);
    return r;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
    uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // lex on ascending var list: smaller var with larger exponent wins
    uint32_t i = 0;
    while (i < a.e.size() && i < b.e.size()) {
        uint32_t va = a.e[i] >> 16, vb = b.e[i] >> 16;
        if (va != vb) return va < vb ? 1 : -1;
        uint32_t ea = a.e[i] & 0xffff, eb = b.e[i] & 0xffff;
        if (ea != eb) return ea > eb ? 1 : -1;
        ++i;
    }
    if (i < a.e.size()) return 1;
    if (i < b.e.size()) return -1;
    return 0;
}

std::string Monomial::to_string() const {
    if (e.empty()) return "1";
    std::string s;
    for (uint32_t i = 0; i < e.size(); ++i) {
        if (i) s += "*";
        VarId v = static_cast<VarId>(e[i] >> 16);
        uint32_t k = e[i] & 0xffff;
        s += var_name(v);
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

Poly Poly::var(VarId v, uint32_t exp, Rational c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({Monomial::var(v, exp), std::move(c)});
    return p;
}

Poly Poly::term(Monomial m, Rational c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    return p;
}

Rational Poly::constant_part() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rational();
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Poly::Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = mono_cmp(a.terms_[i].mono, b.terms_[j].mono);
        if (c > 0) {
            out.push_back(a.terms_[i++]);
        } else if (c < 0) {
            out.push_back(b.terms_[j++]);
        } else {
            Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!s.is_zero()) out.push_back({a.terms_[i].mono, std::move(s)});
            ++i, ++j;
        }
    }
    while (i < a.terms_.size()) out.push_back(a.terms_[i++]);
    while (j < b.terms_.size()) out.push_back(b.terms_[j++]);
    return Poly::from_sorted(std::move(out));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (b.terms_.size() == 1) {
        std::vector<Poly::Term> out;
        out.reserve(a.terms_.size());
        for (const auto& t : a.terms_)
            out.push_back({t.mono * b.terms_[0].mono, t.coeff * b.terms_[0].coeff});
        return Poly::from_sorted(std::move(out));
    }
    if (a.terms_.size() == 1) return b * a;
    std::map<Monomial, Rational, MonoLess> acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Monomial m = ta.mono * tb.mono;
            auto [it, fresh] = acc.try_emplace(std::move(m), Rational());
            it->second += ta.coeff * tb.coeff;
        }
    std::vector<Poly::Term> out;
    out.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) out.push_back({it->first, it->second});
    return Poly::from_sorted(std::move(out));
}

Poly operator*(const Poly& a, const Rational& c) {
    if (c.is_zero()) return Poly();
    Poly r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::pow(uint32_t e) const {
    Poly r(1);
    Poly b = *this;
    while (e) {
        if (e & 1) r *= b;
        if (e >>= 1) b *= b;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) ||
            a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

std::optional<Poly> Poly::exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly();
    Poly rem = a;
    std::vector<Term> quot;
    const Term& lead_b = b.leading();
    while (!rem.is_zero()) {
        auto qm = Monomial::divide(rem.leading().mono, lead_b.mono);
        if (!qm) return std::nullopt;
        Rational qc = rem.leading().coeff / lead_b.coeff;
        Poly qterm = Poly::term(*qm, qc);
        quot.push_back({std::move(*qm), std::move(qc)});
        rem -= qterm * b;
    }
    // quotient monomials strictly decrease, so the list is already sorted
    return Poly::from_sorted(std::move(quot));
}

Poly Poly::derivative_x() const {
    Poly out;
    for (const auto& t : terms_) {
        for (uint32_t i = 0; i < t.mono.e.size(); ++i) {
            VarId v = static_cast<VarId>(t.mono.e[i] >> 16);
            uint32_t k = t.mono.e[i] & 0xffff;
            Monomial rest;
            for (uint32_t j = 0; j < t.mono.e.size(); ++j) {
                if (j == i) {
                    if (k > 1) rest.e.push_back((t.mono.e[i] & 0xffff0000u) | (k - 1));
                } else {
                    rest.e.push_back(t.mono.e[j]);
                }
            }
            Rational c = t.coeff * Rational(static_cast<int64_t>(k));
            auto dv = var_dx(v);
            if (!dv) {
                out += Poly::term(std::move(rest), std::move(c));
            } else {
                Monomial m = rest * Monomial::var(*dv);
                out += Poly::term(std::move(m), std::move(c));
            }
        }
    }
    return out;
}

Poly Poly::substitute(const std::vector<std::pair<VarId, Poly>>& subs) const {
    auto find = [&](VarId v) -> const Poly* {
        for (const auto& [sv, sp] : subs)
            if (sv == v) return &sp;
        return nullptr;
    };
    Poly out;
    for (const auto& t : terms_) {
        Poly acc(t.coeff);
        for (uint32_t i = 0; i < t.mono.e.size(); ++i) {
            VarId v = static_cast<VarId>(t.mono.e[i] >> 16);
            uint32_t k = t.mono.e[i] & 0xffff;
            if (const Poly* rep = find(v)) {
                acc *= rep->pow(k);
                if (acc.is_zero()) break;
            } else {
                acc *= Poly::var(v, k);
            }
        }
        out += acc;
    }
    return out;
}

bool Poly::contains_var(VarId v) const {
    for (const auto& t : terms_)
        if (t.mono.exp_of(v) > 0) return true;
    return false;
}

bool Poly::depends_on_base(VarBase b) const {
    for (const auto& t : terms_)
        for (uint32_t p : t.mono.e)
            if (var_base(static_cast<VarId>(p >> 16)) == b) return true;
    return false;
}

Rational Poly::content() const {
    if (is_zero()) return Rational();
    BigInt num_gcd, den_lcm(1);
    for (const auto& t : terms_) {
        num_gcd = BigInt::gcd(num_gcd, t.coeff.num());
        BigInt g = BigInt::gcd(den_lcm, t.coeff.den());
        den_lcm = den_lcm * (t.coeff.den() / g);
    }
    Rational c(num_gcd, den_lcm);
    if (leading().coeff.is_negative()) c = -c;
    return c;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return Poly();
    return *this * content().inverse();
}

std::optional<Rational> Poly::poly_degree() const {
    std::optional<Rational> deg;
    for (const auto& t : terms_) {
        Rational d(0);
        for (uint32_t p : t.mono.e) {
            VarBase b = var_base(static_cast<VarId>(p >> 16));
            int64_t e = p & 0xffff;
            switch (b) {
                case VarBase::Z:
                case VarBase::R: d += Rational(e); break;
                case VarBase::U:
                case VarBase::S: d += Rational(e, 2); break;
                case VarBase::X: break;
            }
        }
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg ? deg : std::optional<Rational>(Rational(0));
}

std::optional<int64_t> Poly::diff_weight() const {
    std::optional<int64_t> wt;
    for (const auto& t : terms_) {
        int64_t w = 0;
        for (uint32_t p : t.mono.e) {
            VarId v = static_cast<VarId>(p >> 16);
            int64_t e = p & 0xffff;
            if (v == VAR_X)
                w -= e;
            else
                w += e * static_cast<int64_t>(var_order(v));
        }
        if (!wt)
            wt = w;
        else if (*wt != w)
            return std::nullopt;
    }
    return wt ? wt : std::optional<int64_t>(0);
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c.is_negative()) {
                s += "-";
                c = -c;
            }
        } else {
            s += c.is_negative() ? " - " : " + ";
            if (c.is_negative()) c = -c;
        }
        first = false;
        if (t.mono.is_one()) {
            s += c.to_string();
        } else {
            if (!c.is_one()) s += c.to_string() + "*";
            s += t.mono.to_string();
        }
    }
    return s;
}

size_t Poly::hash() const {
    size_t h = 1469598103934665603ULL;
    for (const auto& t : terms_) {
        for (uint32_t p : t.mono.e) h = (h ^ p) * 1099511628211ULL;
        h = (h ^ t.coeff.hash()) * 1099511628211ULL;
    }
    return h;
}

bool PolyLess::operator()(const Poly& a, const Poly& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        int c = mono_cmp(a.terms()[i].mono, b.terms()[i].mono);
        if (c != 0) return c < 0;
        const Rational &ca = a.terms()[i].coeff, &cb = b.terms()[i].coeff;
        if (ca != cb) return ca < cb;
    }
    return false;
}

}  // namespace stringforge
