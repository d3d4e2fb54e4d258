#include "stringforge/genfun.hpp"

#include <json.hpp>

namespace stringforge {

LogCombo cumulant(int g, const GenusTable& table) {
    if (g == 0) {
        DiffExpr arg = table.z_at(0) / DiffExpr::x();
        return LogCombo::log_term(Rational(1), arg);
    }
    // coefficient of w^g in log(1 + c_1 w + ... + c_g w^g), c_h = z_h / z
    std::vector<DiffExpr> c(g + 1);
    for (int h = 1; h <= g; ++h) c[h] = table.z_at(h) / table.z_at(0);
    std::vector<DiffExpr> acc(g + 1);
    // log(1+w) = sum_k (-1)^(k+1) w^k / k with w = sum_h c_h at slot h
    std::vector<DiffExpr> w(g + 1);
    for (int h = 1; h <= g; ++h) w[h] = c[h];
    std::vector<DiffExpr> wk = w;  // w^k, starting k = 1
    for (int k = 1; k <= g; ++k) {
        Rational coeff(k % 2 ? 1 : -1, k);
        for (int h = k; h <= g; ++h) acc[h] += wk[h] * coeff;
        if (k < g) {
            std::vector<DiffExpr> next(g + 1);
            for (int i = 1; i <= g; ++i) {
                if (wk[i].is_zero()) continue;
                for (int j = 1; i + j <= g; ++j) next[i + j] += wk[i] * w[j];
            }
            wk = std::move(next);
        }
    }
    return LogCombo(acc[g]);
}

LogCombo free_energy_relation(int g, const GenusTable& table) {
    LogCombo out;
    for (int m = 0; m <= g; ++m) {
        Rational coeff = Rational(1 - 2 * m) *
                         bernoulli(static_cast<uint32_t>(2 * m)) /
                         Rational::factorial(static_cast<uint32_t>(2 * m));
        LogCombo zt = cumulant(g - m, table);
        for (int d = 0; d < 2 * m; ++d) zt = zt.d_x();
        out = out + zt * coeff;
    }
    return out;
}

bool verify_closed_form(int g, const LogCombo& candidate, const GenusTable& table) {
    LogCombo lhs = candidate.d_x().d_x();
    LogCombo rhs = free_energy_relation(g, table);
    if (lhs.logs().size() != rhs.logs().size()) return false;
    for (size_t i = 0; i < lhs.logs().size(); ++i) {
        if (lhs.logs()[i].first != rhs.logs()[i].first ||
            !(lhs.logs()[i].second == rhs.logs()[i].second))
            return false;
    }
    return lhs.rational_part() == rhs.rational_part();
}

std::string verification_report_json(int g, const LogCombo& candidate,
                                     const GenusTable& table) {
    LogCombo lhs = candidate.d_x().d_x();
    LogCombo rhs = free_energy_relation(g, table);
    bool equal = verify_closed_form(g, candidate, table);
    nlohmann::json out;
    out["schema_version"] = 1;
    out["genus"] = g;
    out["lhs_hash"] = lhs.rational_part().hash();
    out["rhs_hash"] = rhs.rational_part().hash();
    out["equal"] = equal;
    return out.dump(2);
}

}  // namespace stringforge
