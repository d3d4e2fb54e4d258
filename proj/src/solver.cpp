#include "stringforge/solver.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace stringforge {

const DiffExpr& GenusTable::z_at(int g) const {
    auto it = z.find(g);
    if (it == z.end())
        throw MissingLowerGenus("genus table lacks z_" + std::to_string(g));
    return it->second;
}

const DiffExpr& GenusTable::u_at(int k) const {
    auto it = u.find(k);
    if (it == u.end())
        throw MissingLowerGenus("genus table lacks u_" + std::to_string(k));
    return it->second;
}

std::string GenusTable::to_json() const {
    nlohmann::json out;
    out["schema_version"] = 1;
    for (const auto& [g, e] : z)
        if (g > 0) out["z" + std::to_string(g)] = e.to_string();
    for (const auto& [k, e] : u)
        if (k > 0) out["u" + std::to_string(k)] = e.to_string();
    return out.dump(2);
}

const OperatorPoly& OperatorTable::get(const Partition& lambda,
                                       const Partition& eta, Variant v) {
    auto key = std::make_tuple(lambda, eta, static_cast<int>(v));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    OperatorPoly op = string_operator(lambda, eta, v, opts_);
    return cache_.emplace(std::move(key), std::move(op)).first->second;
}

namespace {

// grade-0 dictionary: the [N^0 h^0] / [N^0 h^-1] values of a reduced
// (dr-degree <= 1) operator term acting on V'(h + s + r h^-1), expressed
// through phi_m and psi_m with s -> u, r -> z
DiffExpr dict_term(int e2, int a, int b, bool bare) {
    if (e2 % 2 != 0)
        throw std::logic_error("dict_term: half-integer r power reached the solver");
    if (b > 1) throw std::logic_error("dict_term: unreduced dr power");
    DiffExpr zpow = DiffExpr::jet(VarBase::Z).pow(e2 / 2);
    if (!bare) {
        if (b == 0) {
            if (a == 0) return DiffExpr();  // phi_0 = 0
            return zpow * phi_psi(a).phi;
        }
        return zpow / DiffExpr::jet(VarBase::Z) * phi_psi(a + 1).psi;
    }
    if (b == 0) {
        if (a == 0) return zpow * DiffExpr::x();  // psi_0 = x
        return zpow * phi_psi(a).psi;
    }
    return zpow * phi_psi(a + 1).phi;
}

DiffExpr dict_operator(const OperatorPoly& op, bool bare) {
    OperatorPoly red = bare ? reduce_mod_I_bare(op) : reduce_mod_I(op);
    DiffExpr out;
    for (const auto& [k, c] : red.terms())
        out += dict_term(k.e2, k.a, k.b, bare) * c;
    return out;
}

// truncated series in N^-1 with DiffExpr coefficients
using NSeries = std::vector<DiffExpr>;

NSeries nseries_mul(const NSeries& a, const NSeries& b, int order) {
    NSeries r(order + 1);
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// d_x^m of the N-expansion of s (base U) or r (base Z), entries 0..order
NSeries jet_factor_series(VarBase base, int m, int order, const GenusTable& table) {
    NSeries out(order + 1);
    for (int k = 0; k <= order; ++k) {
        DiffExpr entry;
        if (base == VarBase::U) {
            auto it = table.u.find(k);
            if (it == table.u.end()) {
                if (k == 0)
                    entry = DiffExpr::jet(VarBase::U);
                else
                    throw MissingLowerGenus("jet series needs u_" + std::to_string(k));
            } else {
                entry = it->second;
            }
        } else {
            if (k % 2 != 0) continue;  // r expands in N^-2 only
            auto it = table.z.find(k / 2);
            if (it == table.z.end()) {
                if (k == 0)
                    entry = DiffExpr::jet(VarBase::Z);
                else
                    throw MissingLowerGenus("jet series needs z_" +
                                            std::to_string(k / 2));
            } else {
                entry = it->second;
            }
        }
        for (int d = 0; d < m; ++d) entry = entry.d_x();
        out[k] = std::move(entry);
    }
    return out;
}

// multisets (u_parts, z_parts) with sum(u) + 2 sum(z) == p, parts >= 1
struct Extraction {
    std::vector<int> u_parts, z_parts;
};

void enumerate_extractions(int p, std::vector<Extraction>& out) {
    std::function<void(int, int, Extraction&)> rec_z = [&](int rem, int maxpart,
                                                           Extraction& cur) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int h = std::min(rem / 2, maxpart); h >= 1; --h) {
            cur.z_parts.push_back(h);
            rec_z(rem - 2 * h, h, cur);
            cur.z_parts.pop_back();
        }
    };
    std::function<void(int, int, Extraction&)> rec_u = [&](int rem, int maxpart,
                                                           Extraction& cur) {
        // close with z parts
        Extraction tmp = cur;
        rec_z(rem, rem / 2, tmp);
        for (int k = std::min(rem, maxpart); k >= 1; --k) {
            cur.u_parts.push_back(k);
            rec_u(rem - k, k, cur);
            cur.u_parts.pop_back();
        }
    };
    Extraction cur;
    rec_u(p, p, cur);
}

Rational multiplicity_factor(const std::vector<int>& parts) {
    Rational f(1);
    int run = 1;
    for (size_t i = 1; i <= parts.size(); ++i) {
        if (i < parts.size() && parts[i] == parts[i - 1]) {
            ++run;
        } else {
            f *= Rational::factorial(run);
            run = 1;
        }
    }
    return f;
}

}  // namespace

DiffExpr leading_order_equation(Variant v) {
    if (v == Variant::A) return phi_psi(0).phi;                 // 0 = phi_0
    return phi_psi(0).psi - DiffExpr::x();                      // x = psi_0
}

ContinuumEquation continuum_equation(int g, Variant v, const GenusTable& table,
                                     OperatorTable& ops) {
    if (g < 1) throw std::invalid_argument("continuum_equation: g >= 1 required");
    const int order = 2 * g;
    ContinuumEquation eq;

    for (const auto& [lambda, eta] : Partition::all_pairs(order)) {
        const int jet_cost = lambda.weight() + eta.weight();
        const int budget = order - jet_cost;
        const bool bare_cell = v == Variant::B && lambda.empty() && eta.empty();
        const OperatorPoly& op = ops.get(lambda, eta, v);
        if (bare_cell && !op.is_zero())
            throw std::logic_error("continuum_equation: nonzero operator on the "
                                   "bare cell of the second equation");
        if (op.is_zero() && !bare_cell) continue;

        // N-expansion of the jet prefactor
        NSeries jets{DiffExpr(1)};
        for (int m : lambda.parts())
            jets = nseries_mul(jets, jet_factor_series(VarBase::U, m, budget, table),
                               budget);
        for (int m : eta.parts())
            jets = nseries_mul(jets, jet_factor_series(VarBase::Z, m, budget, table),
                               budget);

        // N-expansion of the operator part via genus extraction
        for (int q = 0; q <= budget; ++q) {
            int jet_grade = budget - q;
            if (jet_grade >= static_cast<int>(jets.size()) ||
                jets[jet_grade].is_zero())
                continue;
            std::vector<Extraction> exts;
            enumerate_extractions(q, exts);
            for (const auto& ext : exts) {
                OperatorPoly composed =
                    OperatorPoly::term(0, static_cast<int>(ext.u_parts.size()),
                                       static_cast<int>(ext.z_parts.size()),
                                       Rational(1));
                bool has_unknown = false;
                bool unknown_is_u = false;
                DiffExpr coeff(1);
                for (int k : ext.u_parts) {
                    if (k == order) {
                        has_unknown = true;
                        unknown_is_u = true;
                    } else {
                        coeff *= table.u_at(k);
                    }
                }
                for (int h : ext.z_parts) {
                    if (2 * h == order) {
                        has_unknown = true;
                        unknown_is_u = false;
                    } else {
                        coeff *= table.z_at(h);
                    }
                }
                coeff = coeff * (multiplicity_factor(ext.u_parts) *
                                 multiplicity_factor(ext.z_parts))
                                    .inverse();
                DiffExpr dval;
                if (bare_cell)
                    dval = dict_operator(composed, true);
                else
                    dval = dict_operator(composed * op, false);
                DiffExpr term = jets[jet_grade] * coeff * dval;
                if (term.is_zero()) continue;
                if (has_unknown) {
                    if (unknown_is_u)
                        eq.coeff_u += term;
                    else
                        eq.coeff_z += term;
                } else {
                    eq.known += term;
                }
            }
        }
    }
    return eq;
}

std::pair<DiffExpr, DiffExpr> solve_genus(int g, GenusTable& table,
                                          OperatorTable& ops) {
    if (g < 1) throw std::invalid_argument("solve_genus: g >= 1 required");
    for (int h = 1; h < g; ++h) table.z_at(h);
    // fill odd entries up to 2g-1
    for (int k = 1; k <= 2 * g - 1; ++k) {
        if (table.u.find(k) == table.u.end()) {
            if (k % 2 == 0)
                throw MissingLowerGenus("solve_genus(" + std::to_string(g) +
                                        ") needs solved u_" + std::to_string(k));
            table.u[k] = odd_u((k - 1) / 2, table);
        }
    }
    ContinuumEquation ea = continuum_equation(g, Variant::A, table, ops);
    ContinuumEquation eb = continuum_equation(g, Variant::B, table, ops);
    DiffExpr det = ea.coeff_u * eb.coeff_z - ea.coeff_z * eb.coeff_u;
    if (det.is_zero()) throw SingularPivot("solve_genus: singular unknown block");
    DiffExpr u2g = (eb.known * ea.coeff_z - ea.known * eb.coeff_z) / det;
    DiffExpr zg = (ea.known * eb.coeff_u - eb.known * ea.coeff_u) / det;
    table.z[g] = zg;
    table.u[2 * g] = u2g;
    return {zg, u2g};
}

DiffExpr odd_u(int g, const GenusTable& table) {
    // u_{2g+1} = -sum_{m=1}^{2g+1} B_m / m! d_x^m u_{2g+1-m}, B_1 = -1/2
    DiffExpr out;
    for (int m = 1; m <= 2 * g + 1; ++m) {
        Rational bm = bernoulli(static_cast<uint32_t>(m));
        if (bm.is_zero()) continue;
        DiffExpr term = table.u_at(2 * g + 1 - m);
        for (int d = 0; d < m; ++d) term = term.d_x();
        out -= term * (bm / Rational::factorial(static_cast<uint32_t>(m)));
    }
    return out;
}

DiffExpr residual(int g, Variant v, const GenusTable& table, OperatorTable& ops) {
    ContinuumEquation eq = continuum_equation(g, v, table, ops);
    return eq.known + eq.coeff_u * table.u_at(2 * g) + eq.coeff_z * table.z_at(g);
}

namespace {

void check_entry(GradingReport& rep, const std::string& name, const DiffExpr& e,
                 const Rational& want_degree, int64_t want_weight, int max_den) {
    auto deg = e.poly_degree();
    auto wt = e.diff_weight();
    if (!deg || *deg != want_degree)
        rep.violations.push_back(name + ": polynomial degree " +
                                 (deg ? deg->to_string() : "non-homogeneous") +
                                 ", expected " + want_degree.to_string());
    if (!wt || *wt != want_weight)
        rep.violations.push_back(name + ": differential weight " +
                                 (wt ? std::to_string(*wt) : "non-homogeneous") +
                                 ", expected " + std::to_string(want_weight));
    if (!e.denominator_divides(discriminant_poly(), max_den))
        rep.violations.push_back(name + ": denominator does not divide D^" +
                                 std::to_string(max_den));
}

}  // namespace

GradingReport grading_check(const GenusTable& table) {
    GradingReport rep;
    for (const auto& [g, e] : table.z) {
        if (g == 0) continue;
        check_entry(rep, "z" + std::to_string(g), e, Rational(1), 2 * g, 8 * g - 3);
    }
    for (const auto& [k, e] : table.u) {
        if (k == 0) continue;
        // k = 2g: D^(8g-3); k = 2g+1: D^(8g-2)
        if (k % 2 == 0)
            check_entry(rep, "u" + std::to_string(k), e, Rational(1, 2), k,
                        4 * k - 3);
        else
            check_entry(rep, "u" + std::to_string(k), e, Rational(1, 2), k,
                        std::max(4 * (k - 1) - 2, 0));
    }
    rep.ok = rep.violations.empty();
    return rep;
}

DiffExpr set_u_zero(const DiffExpr& e) {
    std::vector<std::pair<VarId, DiffExpr>> subs;
    for (unsigned k = 0; k <= 20; ++k)
        subs.emplace_back(make_var(VarBase::U, k), DiffExpr());
    return e.substitute(subs);
}

}  // namespace stringforge
