#include "stringforge/diffexpr.hpp"

#include <algorithm>
#include <stdexcept>

namespace stringforge {

DiffExpr DiffExpr::from_parts(Poly num, std::map<Poly, int, PolyLess> den) {
    DiffExpr e;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.reduce();
    return e;
}

void DiffExpr::reduce() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = Poly::exact_div(num_, it->first);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }
}

Poly DiffExpr::den_expanded() const {
    Poly d(1);
    for (const auto& [f, e] : den_) d *= f.pow(static_cast<uint32_t>(e));
    return d;
}

DiffExpr operator+(const DiffExpr& a, const DiffExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // common denominator: factorwise max
    std::map<Poly, int, PolyLess> den = a.den_;
    for (const auto& [f, e] : b.den_) {
        auto [it, fresh] = den.try_emplace(f, 0);
        it->second = std::max(it->second, e);
    }
    Poly na = a.num_, nb = b.num_;
    for (const auto& [f, e] : den) {
        auto ea = a.den_.find(f);
        int need_a = e - (ea == a.den_.end() ? 0 : ea->second);
        if (need_a > 0) na *= f.pow(static_cast<uint32_t>(need_a));
        auto eb = b.den_.find(f);
        int need_b = e - (eb == b.den_.end() ? 0 : eb->second);
        if (need_b > 0) nb *= f.pow(static_cast<uint32_t>(need_b));
    }
    return DiffExpr::from_parts(na + nb, std::move(den));
}

DiffExpr DiffExpr::operator-() const {
    DiffExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

DiffExpr operator-(const DiffExpr& a, const DiffExpr& b) { return a + (-b); }

DiffExpr operator*(const DiffExpr& a, const DiffExpr& b) {
    if (a.is_zero() || b.is_zero()) return DiffExpr();
    std::map<Poly, int, PolyLess> den = a.den_;
    for (const auto& [f, e] : b.den_) {
        auto [it, fresh] = den.try_emplace(f, 0);
        it->second += e;
    }
    return DiffExpr::from_parts(a.num_ * b.num_, std::move(den));
}

DiffExpr operator*(const DiffExpr& a, const Rational& c) {
    if (c.is_zero()) return DiffExpr();
    DiffExpr r = a;
    r.num_ *= c;
    return r;
}

DiffExpr DiffExpr::inverse() const {
    if (is_zero()) throw std::domain_error("DiffExpr: inverse of zero");
    // 1 / (num / prod f^e) = prod f^e / num
    Poly newnum(1);
    for (const auto& [f, e] : den_) newnum *= f.pow(static_cast<uint32_t>(e));
    Rational c = num_.content();
    Poly prim = num_ * c.inverse();
    std::map<Poly, int, PolyLess> newden;
    if (!prim.is_constant() || !prim.constant_part().is_one())
        newden.emplace(std::move(prim), 1);
    return DiffExpr::from_parts(newnum * c.inverse(), std::move(newden));
}

DiffExpr operator/(const DiffExpr& a, const DiffExpr& b) {
    return a * b.inverse();
}

DiffExpr DiffExpr::pow(int e) const {
    if (e == 0) return DiffExpr(1);
    DiffExpr base = e > 0 ? *this : inverse();
    uint32_t k = static_cast<uint32_t>(e > 0 ? e : -e);
    DiffExpr r(1);
    while (k) {
        if (k & 1) r *= base;
        if (k >>= 1) base *= base;
    }
    return r;
}

bool operator==(const DiffExpr& a, const DiffExpr& b) {
    if (a.den_.size() == b.den_.size()) {
        bool same_den = true;
        auto ia = a.den_.begin();
        auto ib = b.den_.begin();
        for (; ia != a.den_.end(); ++ia, ++ib)
            if (ia->second != ib->second || !(ia->first == ib->first)) {
                same_den = false;
                break;
            }
        if (same_den) return a.num_ == b.num_;
    }
    return a.num_ * b.den_expanded() == b.num_ * a.den_expanded();
}

DiffExpr DiffExpr::d_x() const {
    if (is_zero()) return DiffExpr();
    // d(N / prod f_i^e_i) = [N' prod f_i - N sum_i e_i f_i' prod_{j!=i} f_j]
    //                       / prod f_i^{e_i+1}
    Poly prod_f(1);
    for (const auto& [f, e] : den_) prod_f *= f;
    Poly top = num_.derivative_x() * prod_f;
    for (const auto& [fi, ei] : den_) {
        Poly rest(1);
        for (const auto& [fj, ej] : den_)
            if (!(fj == fi)) rest *= fj;
        top -= num_ * fi.derivative_x() * rest * Rational(ei);
    }
    std::map<Poly, int, PolyLess> den = den_;
    for (auto& [f, e] : den) ++e;
    return DiffExpr::from_parts(std::move(top), std::move(den));
}

DiffExpr DiffExpr::substitute(
    const std::vector<std::pair<VarId, DiffExpr>>& subs) const {
    // numerator: expand term by term through DiffExpr arithmetic
    auto subst_poly = [&](const Poly& p) {
        DiffExpr out;
        for (const auto& t : p.terms()) {
            DiffExpr acc{t.coeff};
            for (uint32_t i = 0; i < t.mono.e.size(); ++i) {
                VarId v = static_cast<VarId>(t.mono.e[i] >> 16);
                int k = static_cast<int>(t.mono.e[i] & 0xffff);
                const DiffExpr* rep = nullptr;
                for (const auto& [sv, se] : subs)
                    if (sv == v) {
                        rep = &se;
                        break;
                    }
                acc *= rep ? rep->pow(k) : DiffExpr(Poly::var(v, k));
                if (acc.is_zero()) break;
            }
            out += acc;
        }
        return out;
    };
    DiffExpr out = subst_poly(num_);
    for (const auto& [f, e] : den_) out = out / subst_poly(f).pow(e);
    return out;
}

std::optional<Rational> DiffExpr::poly_degree() const {
    auto dn = num_.poly_degree();
    if (!dn) return std::nullopt;
    Rational d = *dn;
    for (const auto& [f, e] : den_) {
        auto df = f.poly_degree();
        if (!df) return std::nullopt;
        d -= *df * Rational(e);
    }
    return d;
}

std::optional<int64_t> DiffExpr::diff_weight() const {
    auto wn = num_.diff_weight();
    if (!wn) return std::nullopt;
    int64_t w = *wn;
    for (const auto& [f, e] : den_) {
        auto wf = f.diff_weight();
        if (!wf) return std::nullopt;
        w -= *wf * e;
    }
    return w;
}

bool DiffExpr::denominator_divides(const Poly& f, int max_exp) const {
    Poly fp = f.primitive_part();
    int total = 0;
    for (const auto& [g, e] : den_) {
        if (!(g == fp)) return false;
        total += e;
    }
    return total <= max_exp;
}

std::string DiffExpr::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string s = "(" + num_.to_string() + ")";
    s += " / (";
    bool first = true;
    for (const auto& [f, e] : den_) {
        if (!first) s += " * ";
        first = false;
        s += "(" + f.to_string() + ")";
        if (e != 1) s += "^" + std::to_string(e);
    }
    s += ")";
    return s;
}

size_t DiffExpr::hash() const {
    size_t h = num_.hash();
    for (const auto& [f, e] : den_)
        h = h * 1099511628211ULL ^ (f.hash() + static_cast<size_t>(e));
    return h;
}

LogCombo LogCombo::log_term(Rational coeff, DiffExpr arg) {
    LogCombo lc;
    lc.add_log(coeff, arg);
    return lc;
}

void LogCombo::add_log(const Rational& c, const DiffExpr& arg) {
    if (c.is_zero()) return;
    if (arg.is_constant())
        throw std::invalid_argument("LogCombo: constant log argument");
    for (auto it = logs_.begin(); it != logs_.end(); ++it) {
        if (it->second == arg) {
            it->first += c;
            if (it->first.is_zero()) logs_.erase(it);
            return;
        }
    }
    logs_.emplace_back(c, arg);
}

LogCombo operator+(const LogCombo& a, const LogCombo& b) {
    LogCombo r = a;
    r.rational_ += b.rational_;
    for (const auto& [c, arg] : b.logs_) r.add_log(c, arg);
    return r;
}

LogCombo LogCombo::operator-() const {
    LogCombo r;
    r.rational_ = -rational_;
    for (const auto& [c, arg] : logs_) r.logs_.emplace_back(-c, arg);
    return r;
}

LogCombo operator-(const LogCombo& a, const LogCombo& b) { return a + (-b); }

LogCombo operator*(const LogCombo& a, const Rational& c) {
    LogCombo r;
    if (c.is_zero()) return r;
    r.rational_ = a.rational_ * c;
    for (const auto& [lc, arg] : a.logs_) r.logs_.emplace_back(lc * c, arg);
    return r;
}

LogCombo LogCombo::d_x() const {
    DiffExpr out = rational_.d_x();
    for (const auto& [c, arg] : logs_) out += arg.d_x() / arg * c;
    return LogCombo(out);
}

std::string LogCombo::to_string() const {
    std::string s;
    if (!rational_.is_zero() || logs_.empty()) s = rational_.to_string();
    for (const auto& [c, arg] : logs_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*log(" + arg.to_string() + ")";
    }
    return s;
}

}  // namespace stringforge
