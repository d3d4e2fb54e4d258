#include "stringforge/motzkin.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stringforge {

void Partition::canonicalize() {
    for (int p : parts_)
        if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "phi";
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += "+";
        s += std::to_string(parts_[i]);
    }
    return s;
}

std::vector<Partition> Partition::all_of_weight(int w) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(w, w);
    return out;
}

std::vector<std::pair<Partition, Partition>> Partition::all_pairs(int max_weight) {
    std::vector<std::pair<Partition, Partition>> out;
    for (int w = 0; w <= max_weight; ++w)
        for (int wl = w; wl >= 0; --wl)
            for (const auto& l : all_of_weight(wl))
                for (const auto& e : all_of_weight(w - wl)) out.emplace_back(l, e);
    return out;
}

int MotzkinPath::end_height() const {
    int h = 0;
    for (Step s : steps) h += s == Step::Up ? 1 : s == Step::Down ? -1 : 0;
    return h;
}

std::vector<int> MotzkinPath::heights() const {
    std::vector<int> h(steps.size() + 1, 0);
    for (size_t i = 0; i < steps.size(); ++i)
        h[i + 1] = h[i] + (steps[i] == Step::Up ? 1 : steps[i] == Step::Down ? -1 : 0);
    return h;
}

std::string MotzkinPath::to_string() const {
    std::string s;
    for (Step st : steps)
        s += st == Step::Up ? 'U' : st == Step::Flat ? 'F' : 'D';
    return s;
}

MotzkinPath MotzkinPath::parse(std::string_view s) {
    MotzkinPath p;
    for (char c : s) {
        switch (c) {
            case 'U': p.steps.push_back(Step::Up); break;
            case 'F': p.steps.push_back(Step::Flat); break;
            case 'D': p.steps.push_back(Step::Down); break;
            default: throw std::invalid_argument("MotzkinPath: bad step char");
        }
    }
    return p;
}

namespace {

void rec_paths(MotzkinPath& cur, int remaining, int height, int target,
               const std::function<void(const MotzkinPath&)>& fn) {
    if (std::abs(target - height) > remaining) return;
    if (remaining == 0) {
        fn(cur);
        return;
    }
    for (Step s : {Step::Up, Step::Flat, Step::Down}) {
        cur.steps.push_back(s);
        rec_paths(cur, remaining - 1,
                  height + (s == Step::Up ? 1 : s == Step::Down ? -1 : 0), target, fn);
        cur.steps.pop_back();
    }
}

}  // namespace

void for_each_path(int length, int end_height,
                   const std::function<void(const MotzkinPath&)>& fn) {
    if (length < 0) throw std::invalid_argument("for_each_path: negative length");
    MotzkinPath cur;
    cur.steps.reserve(length);
    rec_paths(cur, length, 0, end_height, fn);
}

std::vector<MotzkinPath> enumerate_paths(int length, int end_height) {
    std::vector<MotzkinPath> out;
    for_each_path(length, end_height, [&](const MotzkinPath& p) { out.push_back(p); });
    return out;
}

uint64_t count_paths(int length, int end_height) {
    uint64_t n = 0;
    for_each_path(length, end_height, [&](const MotzkinPath&) { ++n; });
    return n;
}

NGradedExpr operator*(const NGradedExpr& a, const NGradedExpr& b) {
    NGradedExpr r;
    r.order = std::min(a.order, b.order);
    for (const auto& [ka, pa] : a.grades)
        for (const auto& [kb, pb] : b.grades) {
            if (ka + kb > r.order) continue;
            r.add(ka + kb, pa * pb);
        }
    return r;
}

NGradedExpr operator+(const NGradedExpr& a, const NGradedExpr& b) {
    NGradedExpr r;
    r.order = std::min(a.order, b.order);
    for (const auto& [k, p] : a.grades)
        if (k <= r.order) r.add(k, p);
    for (const auto& [k, p] : b.grades)
        if (k <= r.order) r.add(k, p);
    return r;
}

namespace {

// expansion of a shifted series coefficient at height shift k:
// sum_m (k^m / m!) N^-m base^(m)
NGradedExpr step_factor(VarBase base, int shift, int order) {
    NGradedExpr f;
    f.order = order;
    Rational shift_pow(1);
    Rational fact(1);
    for (int m = 0; m <= order; ++m) {
        if (m > 0) {
            shift_pow *= Rational(shift);
            fact *= Rational(m);
        }
        Rational c = shift_pow / fact;
        if (c.is_zero()) continue;
        f.add(m, Poly::var(make_var(base, m), 1, c));
    }
    return f;
}

NGradedExpr path_contribution(const MotzkinPath& p, int order) {
    NGradedExpr acc;
    acc.order = order;
    acc.add(0, Poly(1));
    int h = 0;
    for (Step s : p.steps) {
        switch (s) {
            case Step::Up: ++h; break;
            case Step::Flat: acc = acc * step_factor(VarBase::S, h, order); break;
            case Step::Down:
                acc = acc * step_factor(VarBase::R, h, order);
                --h;
                break;
        }
    }
    return acc;
}

}  // namespace

NGradedExpr contribution(const MotzkinPath& p, int order) {
    return path_contribution(p, order);
}

NGradedExpr motzkin_sum_serial(int J, Variant v, int order) {
    if (J < 1) throw std::invalid_argument("motzkin_sum: J must be >= 1");
    NGradedExpr total;
    total.order = order;
    for_each_path(J - 1, v == Variant::A ? 0 : -1, [&](const MotzkinPath& p) {
        total = total + path_contribution(p, order);
    });
    return total;
}

NGradedExpr motzkin_sum_parallel(int J, Variant v, int order) {
    if (J < 1) throw std::invalid_argument("motzkin_sum: J must be >= 1");
    const int target = v == Variant::A ? 0 : -1;
    const int length = J - 1;
    // split the path space by a short prefix; tails stay lazy
    const int prefix_len = std::min(length, 4);
    struct Prefix {
        MotzkinPath path;
        int height;
    };
    std::vector<Prefix> prefixes;
    {
        MotzkinPath cur;
        std::function<void(int, int)> rec = [&](int rem, int h) {
            if (std::abs(target - h) > rem + (length - prefix_len)) return;
            if (rem == 0) {
                prefixes.push_back({cur, h});
                return;
            }
            for (Step s : {Step::Up, Step::Flat, Step::Down}) {
                cur.steps.push_back(s);
                rec(rem - 1, h + (s == Step::Up ? 1 : s == Step::Down ? -1 : 0));
                cur.steps.pop_back();
            }
        };
        rec(prefix_len, 0);
    }

    std::vector<NGradedExpr> partial(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < prefixes.size(); ++i) {
        NGradedExpr acc;
        acc.order = order;
        MotzkinPath full = prefixes[i].path;
        std::function<void(int, int)> walk = [&](int rem, int h) {
            if (std::abs(target - h) > rem) return;
            if (rem == 0) {
                acc = acc + path_contribution(full, order);
                return;
            }
            for (Step s : {Step::Up, Step::Flat, Step::Down}) {
                full.steps.push_back(s);
                walk(rem - 1, h + (s == Step::Up ? 1 : s == Step::Down ? -1 : 0));
                full.steps.pop_back();
            }
        };
        walk(length - prefix_len, prefixes[i].height);
        partial[i] = std::move(acc);
    }
    NGradedExpr total;
    total.order = order;
    for (const auto& p : partial) total = total + p;
    return total;
}

NGradedExpr motzkin_sum_transfer(int J, Variant v, int order) {
    if (J < 1) throw std::invalid_argument("motzkin_sum: J must be >= 1");
    const int length = J - 1;
    const int target = v == Variant::A ? 0 : -1;
    if (length == 0) {
        NGradedExpr unit;
        unit.order = order;
        if (target == 0) unit.add(0, Poly(1));
        return unit;
    }
    const int span = 2 * length + 1;  // heights -length..length
    std::vector<NGradedExpr> state(span), next(span);
    for (auto& s : state) s.order = order;
    state[length].add(0, Poly(1));
    for (int i = 0; i < length; ++i) {
        for (auto& n : next) n = NGradedExpr{{}, order};
        const int remaining = length - i - 1;
        for (int hi = 0; hi < span; ++hi) {
            const NGradedExpr& st = state[hi];
            if (st.grades.empty()) continue;
            const int h = hi - length;
            if (hi + 1 < span && std::abs(target - (h + 1)) <= remaining)
                next[hi + 1] = next[hi + 1] + st;
            if (std::abs(target - h) <= remaining)
                next[hi] = next[hi] + st * step_factor(VarBase::S, h, order);
            if (hi - 1 >= 0 && std::abs(target - (h - 1)) <= remaining)
                next[hi - 1] = next[hi - 1] + st * step_factor(VarBase::R, h, order);
        }
        std::swap(state, next);
    }
    return state[length + target];
}

NGradedExpr motzkin_sum(int J, Variant v, int order) {
    if (J >= 13) return motzkin_sum_transfer(J, v, order);
#ifdef _OPENMP
    if (J >= 9) return motzkin_sum_parallel(J, v, order);
#endif
    return motzkin_sum_serial(J, v, order);
}

Poly extract_jet_cell(const NGradedExpr& sum, const Partition& lambda,
                      const Partition& eta) {
    Monomial target;
    {
        std::map<VarId, uint32_t> exps;
        for (int p : lambda.parts()) exps[make_var(VarBase::S, p)]++;
        for (int p : eta.parts()) exps[make_var(VarBase::R, p)]++;
        for (const auto& [v, e] : exps)
            target.e.push_back((static_cast<uint32_t>(v) << 16) | e);
    }
    Poly grade_poly = sum.grade(lambda.weight() + eta.weight());
    Poly out;
    for (const auto& t : grade_poly.terms()) {
        Monomial jet, base;
        for (uint32_t p : t.mono.e) {
            VarId v = static_cast<VarId>(p >> 16);
            if (var_order(v) >= 1)
                jet.e.push_back(p);
            else
                base.e.push_back(p);
        }
        if (jet == target) out += Poly::term(base, t.coeff);
    }
    return out;
}

Poly modified_string_poly(const Partition& lambda, const Partition& eta, int J,
                          Variant v) {
    if (J < 1) throw std::invalid_argument("modified_string_poly: J must be >= 1");
    return extract_jet_cell(motzkin_sum(J, v, lambda.weight() + eta.weight()),
                            lambda, eta);
}

}  // namespace stringforge
