#include "stringforge/verifysuite.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "stringforge/genfun.hpp"
#include "stringforge/laurent.hpp"
#include "stringforge/maps_oracle.hpp"
#include "stringforge/specialize.hpp"

namespace stringforge {

namespace {

struct Check {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

void suite_table(Check& c) {
    auto rows = generate_table(3);
    const auto& golden = reference_table();
    c.require(rows.size() == golden.size(),
              "row count " + std::to_string(rows.size()) + " != 18");
    for (const auto& g : golden) {
        bool found = false;
        for (const auto& r : rows) {
            if (r.lambda == g.lambda && r.eta == g.eta) {
                found = true;
                if (!(r.op_a == g.op_a))
                    c.fail("P(a) mismatch at (" + g.lambda.to_string() + ", " +
                           g.eta.to_string() + ")");
                if (!(r.op_b == g.op_b))
                    c.fail("P(b) mismatch at (" + g.lambda.to_string() + ", " +
                           g.eta.to_string() + ")");
            }
        }
        c.require(found, "missing row (" + g.lambda.to_string() + ", " +
                             g.eta.to_string() + ")");
    }
}

void suite_motzkin(Check& c, int max_weight, int max_j) {
    auto pairs = Partition::all_pairs(max_weight);
    std::vector<std::pair<OperatorPoly, OperatorPoly>> ops(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i)
        ops[i] = {string_operator(pairs[i].first, pairs[i].second, Variant::A),
                  string_operator(pairs[i].first, pairs[i].second, Variant::B)};
    for (int J = 1; J <= max_j && c.pass; ++J) {
        for (Variant v : {Variant::A, Variant::B}) {
            NGradedExpr sum = motzkin_sum(J, v, max_weight);
            for (size_t i = 0; i < pairs.size(); ++i) {
                const auto& [l, e] = pairs[i];
                const OperatorPoly& op = v == Variant::A ? ops[i].first : ops[i].second;
                SRLaurent want =
                    SRLaurent::from_poly(extract_jet_cell(sum, l, e));
                if (!(string_equation_cell(op, l, e, J, v) == want)) {
                    c.fail("cell (" + l.to_string() + ", " + e.to_string() + ", " +
                           (v == Variant::A ? "a" : "b") + ") at J = " +
                           std::to_string(J));
                    break;
                }
            }
        }
    }
}

void suite_unwinding(Check& c, int max_m) {
    for (int m = 1; m <= max_m; ++m)
        c.require(check_unwinding(m), "unwinding fails at m = " + std::to_string(m));
    for (int m = 1; m <= std::min(max_m, 6); ++m) {
        c.require(phi_psi(m).phi.denominator_divides(discriminant_poly(), 2 * m - 1),
                  "phi_" + std::to_string(m) + " denominator exceeds D^(2m-1)");
        c.require(phi_psi(m).psi.denominator_divides(discriminant_poly(), 2 * m - 1),
                  "psi_" + std::to_string(m) + " denominator exceeds D^(2m-1)");
    }
}

void suite_identities(Check& c, int max_j) {
    for (int J = 1; J <= max_j; ++J) {
        for (int p = -(J - 1); p <= J - 1 && c.pass; ++p) {
            SRLaurent hp = normalized_generator_coeff(J, p);
            SRLaurent hm = normalized_generator_coeff(J, p - 1);
            SRLaurent hp1 = normalized_generator_coeff(J, p + 1);
            // lowering and raising
            c.require(hp.ds() == hm.shift_r(1 - p).dr().shift_r(p),
                      "path lowering at J=" + std::to_string(J) +
                          " p=" + std::to_string(p));
            c.require(hp.ds() == hp1.shift_r(p + 1).dr().shift_r(-p),
                      "path raising at J=" + std::to_string(J));
            // zeroing
            int ap = p >= 0 ? p : -p;
            SRLaurent zl = hp;
            for (int q = 0; q < ap; ++q) zl = zl.ds();
            SRLaurent zr = normalized_generator_coeff(J, 0);
            for (int q = 0; q < ap; ++q) zr = zr.dr();
            c.require(zl == zr.shift_r(ap), "path zeroing at J=" + std::to_string(J));
            // corrected reflecting: [h^p] monic = r^(-p/2) [h^p] normalized,
            // and [h^p] = [h^-p] on the normalized form
            c.require(monic_generator_coeff(J, p) == hp.shift_r(-p),
                      "reflecting (normalization) at J=" + std::to_string(J));
            c.require(hp == normalized_generator_coeff(J, -p),
                      "reflecting (symmetry) at J=" + std::to_string(J));
        }
        // derivative swapping on [h^0]
        SRLaurent h0 = normalized_generator_coeff(J, 0);
        c.require(h0.dr().dr().shift_r(2) == h0.ds().ds() - h0.dr(),
                  "derivative swapping at J=" + std::to_string(J));
        // integration by parts on (h - h^-1) (...)^(J-1)
        for (int p = -J; p <= J && c.pass; ++p) {
            SRLaurent lhs = (normalized_generator_coeff(J, p - 1) -
                             normalized_generator_coeff(J, p + 1))
                                .ds()
                                .shift_r(1);
            c.require(lhs == normalized_generator_coeff(J, p) * Rational(p),
                      "integration by parts at J=" + std::to_string(J));
        }
    }
}

void solve_through(GenusTable& t, OperatorTable& ops, int g) {
    for (int h = 1; h <= g; ++h)
        if (t.z.find(h) == t.z.end()) solve_genus(h, t, ops);
}

void suite_backsub(Check& c, GenusTable& t, OperatorTable& ops) {
    solve_through(t, ops, 2);
    for (int g = 1; g <= 2; ++g) {
        c.require(residual(g, Variant::A, t, ops).is_zero(),
                  "first equation residual nonzero at g=" + std::to_string(g));
        c.require(residual(g, Variant::B, t, ops).is_zero(),
                  "second equation residual nonzero at g=" + std::to_string(g));
    }
    c.require(leading_order_equation(Variant::A).is_zero(), "leading a-equation");
    c.require(leading_order_equation(Variant::B).is_zero(), "leading b-equation");
}

void suite_grading(Check& c, GenusTable& t, OperatorTable& ops) {
    solve_through(t, ops, 2);
    if (t.u.find(3) == t.u.end()) t.u[3] = odd_u(1, t);
    if (t.u.find(5) == t.u.end()) t.u[5] = odd_u(2, t);
    GradingReport rep = grading_check(t);
    for (const auto& v : rep.violations) c.fail(v);
    // symmetric collapse
    c.require(set_u_zero(t.u.at(2)).is_zero(), "u2 nonzero under u == 0");
    c.require(set_u_zero(t.u.at(4)).is_zero(), "u4 nonzero under u == 0");
}

void suite_closedform(Check& c, GenusTable& t, OperatorTable& ops) {
    solve_through(t, ops, 2);
    c.require(verify_closed_form(1, f1_closed_form(), t), "F1 closed form");
    c.require(verify_closed_form(2, f2_closed_form(), t), "F2 closed form");
    // z1/z = (1/24) d_x^2 log D
    DiffExpr D = discriminant();
    DiffExpr want = DiffExpr::jet(VarBase::Z) * Rational(1, 24) * (D.d_x() / D).d_x();
    c.require(t.z.at(1) == want, "z1 differs from (z/24) d_x^2 log D");
    // gaussian point of the F2 fixture
    std::vector<std::pair<VarId, DiffExpr>> subs;
    for (unsigned k = 0; k <= 12; ++k) {
        subs.emplace_back(make_var(VarBase::U, k), DiffExpr());
        if (k >= 2) subs.emplace_back(make_var(VarBase::Z, k), DiffExpr());
    }
    subs.emplace_back(make_var(VarBase::Z, 0), DiffExpr::x());
    subs.emplace_back(make_var(VarBase::Z, 1), DiffExpr(1));
    c.require(f2_closed_form().rational_part().substitute(subs).is_zero(),
              "F2 fixture nonzero at t = 0");
}

void suite_oracle(Check& c, GenusTable& t, OperatorTable& ops) {
    Potential quartic = Potential::parse("0.5*l^2 + t4*l^4");
    Potential cubic = Potential::parse("0.5*l^2 + t3*l^3");
    struct Case {
        const Potential* V;
        int genus, max_vertices;
    };
    for (const Case& k : {Case{&quartic, 0, 3}, Case{&quartic, 1, 2},
                          Case{&cubic, 0, 4}, Case{&cubic, 1, 4}}) {
        CompareReport rep = compare_with_series(*k.V, k.genus, k.max_vertices, t, ops);
        for (const auto& m : rep.mismatches) c.fail(m);
        c.require(rep.profiles_checked > 0, "no profiles checked");
    }
    // the classical one-vertex values
    OracleCounts one = enumerate_maps({{4, 1}});
    c.require(one.at({0, 3}) == 2, "one quartic vertex, genus 0");
    c.require(one.at({1, 1}) == 1, "one quartic vertex, genus 1");
}

void suite_crossmode(Check& c, GenusTable& t, OperatorTable& ops) {
    solve_through(t, ops, 1);
    for (const char* pot : {"0.5*l^2 + t4*l^4", "0.5*l^2 + t3*l^3"}) {
        Potential V = Potential::parse(pot);
        auto [u, z] = leading_order_series(V, 4);
        SeriesSolution sol = solve_string_equations_series(V, u, z);
        c.require(sol.residuals_zero, std::string("series residuals for ") + pot);
        c.require(sol.u1 == evaluate(t.u.at(1), u, z),
                  std::string("u1 cross-mode for ") + pot);
        c.require(sol.z1 == evaluate(t.z.at(1), u, z),
                  std::string("z1 cross-mode for ") + pot);
        c.require(sol.u2 == evaluate(t.u.at(2), u, z),
                  std::string("u2 cross-mode for ") + pot);
    }
}

void suite_rings(Check& c, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> num(-9, 9), den(1, 9);
    std::uniform_int_distribution<int> exp(-3, 3), nterms(0, 4);
    auto rand_laurent = [&] {
        LaurentPoly<Rational> p;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i)
            p.add_term(exp(rng), Rational(num(rng), den(rng)));
        return p;
    };
    for (int i = 0; i < 200 && c.pass; ++i) {
        auto a = rand_laurent(), b = rand_laurent(), d = rand_laurent();
        c.require((a * b) * d == a * (b * d), "laurent associativity");
        c.require(a * (b + d) == a * b + a * d, "laurent distributivity");
    }
    // trinomial multiplicativity
    Poly s = Poly::var(make_var(VarBase::S)), r = Poly::var(make_var(VarBase::R));
    for (uint32_t j1 = 0; j1 <= 4 && c.pass; ++j1)
        for (uint32_t j2 = 0; j2 <= 4; ++j2)
            c.require(trinomial_power(Poly(1), s, r, j1 + j2) ==
                          trinomial_power(Poly(1), s, r, j1) *
                              trinomial_power(Poly(1), s, r, j2),
                      "trinomial power additivity");
}

}  // namespace

std::vector<PropertyResult> run_verify_suite(const VerifyOptions& opts) {
    GenusTable table = GenusTable::base();
    OperatorTable ops;
    std::vector<std::pair<std::string, std::function<void(Check&)>>> suites = {
        {"table", [&](Check& c) { suite_table(c); }},
        {"motzkin",
         [&](Check& c) { suite_motzkin(c, opts.motzkin_weight, opts.motzkin_j); }},
        {"unwinding", [&](Check& c) { suite_unwinding(c, opts.unwind_m); }},
        {"identities", [&](Check& c) { suite_identities(c, opts.identity_j); }},
        {"backsub", [&](Check& c) { suite_backsub(c, table, ops); }},
        {"grading", [&](Check& c) { suite_grading(c, table, ops); }},
        {"closedform", [&](Check& c) { suite_closedform(c, table, ops); }},
        {"oracle", [&](Check& c) { suite_oracle(c, table, ops); }},
        {"crossmode", [&](Check& c) { suite_crossmode(c, table, ops); }},
        {"rings", [&](Check& c) { suite_rings(c, opts.seed); }},
    };
    std::vector<PropertyResult> results;
    for (auto& [name, fn] : suites) {
        if (!opts.only.empty()) {
            bool wanted = false;
            for (const auto& o : opts.only) wanted = wanted || o == name;
            if (!wanted) continue;
        }
        PropertyResult res;
        res.name = name;
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        res.pass = c.pass;
        res.detail = c.detail;
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace stringforge
