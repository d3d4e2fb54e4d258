// stringforge: exact solver for the continuum string equations of the
// one-matrix model with an asymmetric potential. Subcommands generate the
// string-polynomial table, solve for the genus corrections and free
// energies, specialize to a concrete potential, and run the verification
// suite against the map-enumeration oracle.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "stringforge/genfun.hpp"
#include "stringforge/maps_oracle.hpp"
#include "stringforge/runconfig.hpp"
#include "stringforge/specialize.hpp"
#include "stringforge/verifysuite.hpp"

using namespace stringforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitGenerateFail = 2;
constexpr int kExitInputError = 3;

struct GlobalArgs {
    std::string format;
    std::string config_path;
    int threads = -1;
    int order = -1;
    uint64_t seed = 0;
    bool seed_set = false;
};

RunConfig resolve_config(const GlobalArgs& args) {
    RunConfig cfg;  // defaults
    if (!args.format.empty()) cfg.format = args.format;
    if (args.threads >= 0) cfg.threads = args.threads;
    if (args.order >= 0) cfg.order = args.order;
    if (args.seed_set) cfg.seed = args.seed;
    // config file wins over flags
    if (!args.config_path.empty())
        cfg.apply_entries(RunConfig::read_config_file(args.config_path));
    if (cfg.format != "text" && cfg.format != "json")
        throw std::invalid_argument("format must be text or json");
    cfg.apply_threads();
    return cfg;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

nlohmann::json series_to_json(const CouplingSeries& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : s.terms()) {
        nlohmann::json t_exps = nlohmann::json::object();
        for (uint32_t p : k.t)
            t_exps["t" + std::to_string(p >> 16)] = static_cast<int>(p & 0xffff);
        arr.push_back({{"t_exponents", t_exps},
                       {"x_exponent", Rational(k.x2, 2).to_string()},
                       {"coeff", c.to_string()}});
    }
    return arr;
}

int cmd_table(const RunConfig& cfg, int max_weight, const std::string& out_path) {
    std::vector<TableRow> rows = generate_table(max_weight);
    // verify each generated cell against the path sums before emitting
    for (const auto& r : rows) {
        for (Variant v : {Variant::A, Variant::B}) {
            const OperatorPoly& op = v == Variant::A ? r.op_a : r.op_b;
            for (int J = 1; J <= 8; ++J) {
                if (!(string_equation_cell(op, r.lambda, r.eta, J, v) ==
                      SRLaurent::from_poly(
                          modified_string_poly(r.lambda, r.eta, J, v)))) {
                    std::cerr << "verification failed at (" << r.lambda.to_string()
                              << ", " << r.eta.to_string() << ")\n";
                    return kExitVerifyFail;
                }
            }
        }
    }
    emit(out_path, cfg.format == "json" ? table_to_json(rows) : table_to_text(rows));
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, int genus, bool symmetric,
              const std::string& out_path) {
    GenusTable table = GenusTable::base();
    OperatorTable ops;
    for (int g = 1; g <= genus; ++g) solve_genus(g, table, ops);
    table.u[2 * genus + 1] = odd_u(genus, table);

    // internal verifications gate the exit code
    bool ok = grading_check(table).ok;
    for (int g = 1; g <= genus && ok; ++g) {
        ok = residual(g, Variant::A, table, ops).is_zero() &&
             residual(g, Variant::B, table, ops).is_zero();
    }
    bool f1_ok = genus < 1 || verify_closed_form(1, f1_closed_form(), table);
    bool f2_ok = genus < 2 || verify_closed_form(2, f2_closed_form(), table);
    ok = ok && f1_ok && f2_ok;

    auto render = [&](const DiffExpr& e) {
        return symmetric ? set_u_zero(e).to_string() : e.to_string();
    };
    nlohmann::json out;
    out["schema_version"] = 1;
    out["genus"] = genus;
    std::ostringstream text;
    for (int g = 1; g <= genus; ++g) {
        out["z" + std::to_string(g)] = render(table.z.at(g));
        out["u" + std::to_string(2 * g)] = render(table.u.at(2 * g));
        text << "z" << g << " = " << render(table.z.at(g)) << "\n";
        text << "u" << 2 * g << " = " << render(table.u.at(2 * g)) << "\n";
    }
    out["u" + std::to_string(2 * genus + 1)] = render(table.u.at(2 * genus + 1));
    text << "u" << 2 * genus + 1 << " = " << render(table.u.at(2 * genus + 1))
         << "\n";
    LogCombo rel = free_energy_relation(genus, table);
    std::string rel_str = symmetric
                              ? LogCombo(set_u_zero(rel.rational_part())).to_string()
                              : rel.to_string();
    out["d2F" + std::to_string(genus)] = rel_str;
    text << "d_x^2 F^(" << genus << ") = " << rel_str << "\n";
    if (genus >= 1) {
        LogCombo f1 = symmetric ? f1_closed_form_symmetric() : f1_closed_form();
        out["F1"] = f1.to_string();
        out["F1_verified"] = f1_ok;
        text << "F^(1) = " << f1.to_string() << (f1_ok ? "  [verified]" : "") << "\n";
    }
    if (genus >= 2) {
        out["F2"] = f2_closed_form().to_string();
        out["F2_verified"] = f2_ok;
        text << "F^(2) = " << f2_closed_form().to_string()
             << (f2_ok ? "  [verified]" : "") << "\n";
    }
    emit(out_path, cfg.format == "json" ? out.dump(2) : text.str());
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_specialize(const RunConfig& cfg, const std::string& potential, int genus,
                   int order, const std::string& out_path) {
    Potential V = Potential::parse(potential);
    GenusTable table = GenusTable::base();
    OperatorTable ops;
    auto [u, z] = leading_order_series(V, order);
    auto [ra, rb] = leading_order_residual(V, u, z);
    if (!ra.is_zero() || !rb.is_zero()) {
        std::cerr << "leading-order residual nonzero\n";
        return kExitVerifyFail;
    }
    CouplingSeries F = f_series(genus, V, table, ops, order);
    CouplingSeries u_out = apply_numeric_couplings(V, u);
    CouplingSeries z_out = apply_numeric_couplings(V, z);
    CouplingSeries F_out = apply_numeric_couplings(V, F);

    // map counts per profile (meaningful for symbolic couplings)
    std::vector<std::pair<std::map<int, int>, MapCountReport>> counts;
    if (!V.has_numeric()) {
        std::vector<int> js = V.coupling_indices();
        std::function<void(size_t, int, std::map<int, int>&)> rec =
            [&](size_t idx, int used, std::map<int, int>& cur) {
                if (idx == js.size()) {
                    if (used == 0) return;
                    int darts = 0;
                    for (const auto& [j, n] : cur) darts += j * n;
                    if (darts % 2 == 0) counts.emplace_back(cur, map_count(F, cur));
                    return;
                }
                for (int n = 0; used + n <= order; ++n) {
                    if (n > 0) cur[js[idx]] = n;
                    rec(idx + 1, used + n, cur);
                    cur.erase(js[idx]);
                }
            };
        std::map<int, int> cur;
        rec(0, 0, cur);
    }

    nlohmann::json out;
    out["schema_version"] = 1;
    out["potential"] = V.to_string();
    out["genus"] = genus;
    out["order"] = order;
    out["u"] = series_to_json(u_out);
    out["z"] = series_to_json(z_out);
    out["F"] = series_to_json(F_out);
    nlohmann::json jcounts = nlohmann::json::array();
    std::ostringstream text;
    text << "V = " << V.to_string() << "\n";
    text << "u = " << u_out.to_string() << "\n";
    text << "z = " << z_out.to_string() << "\n";
    text << "F^(" << genus << ") = " << F_out.to_string() << "\n";
    for (const auto& [profile, rep] : counts) {
        for (const auto& [faces, count] : rep.by_faces) {
            if (count.is_zero()) continue;
            nlohmann::json prof = nlohmann::json::object();
            for (const auto& [j, n] : profile) prof["t" + std::to_string(j)] = n;
            jcounts.push_back({{"profile", prof},
                               {"genus", genus},
                               {"faces", faces},
                               {"count", count.to_string()}});
            text << "maps";
            for (const auto& [j, n] : profile)
                text << " " << n << "x" << j << "-valent";
            text << " faces=" << faces << ": " << count.to_string() << "\n";
        }
    }
    out["map_counts"] = jcounts;
    emit(out_path, cfg.format == "json" ? out.dump(2) : text.str());
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& only,
               int unwind_m, const std::string& out_path) {
    VerifyOptions opts;
    opts.only = only;
    opts.unwind_m = unwind_m;
    opts.seed = cfg.seed;
    auto results = run_verify_suite(opts);
    bool all = true;
    nlohmann::json out;
    out["schema_version"] = 1;
    out["results"] = nlohmann::json::array();
    std::ostringstream text;
    for (const auto& r : results) {
        all = all && r.pass;
        out["results"].push_back({{"name", r.name},
                                  {"pass", r.pass},
                                  {"detail", r.detail},
                                  {"seconds", r.seconds}});
        char line[512];
        std::snprintf(line, sizeof(line), "%-12s %s  (%.2f s)%s%s\n", r.name.c_str(),
                      r.pass ? "pass" : "FAIL", r.seconds,
                      r.detail.empty() ? "" : "  ", r.detail.c_str());
        text << line;
    }
    out["all_pass"] = all;
    emit(out_path, cfg.format == "json" ? out.dump(2) : text.str());
    if (!all) {
        for (const auto& r : results)
            if (!r.pass) {
                std::cerr << "first failing property: " << r.name << "\n";
                break;
            }
    }
    return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stringforge: valence-independent string equation solver"};
    app.require_subcommand(1);

    GlobalArgs ga;
    app.add_option("--format", ga.format, "output format: text or json");
    app.add_option("--config", ga.config_path,
                   "config file (key = value; overrides flags)");
    app.add_option("--threads", ga.threads, "worker threads (0 = all cores)");
    app.add_option("--order", ga.order, "series truncation order");
    auto* seed_opt = app.add_option("--seed", ga.seed, "property-suite seed");

    auto* table = app.add_subcommand("table", "generate the string-polynomial table");
    int max_weight = 3;
    table->add_option("--max-weight", max_weight,
                      "largest |lambda|+|eta| (5 and 6 take minutes)")
        ->check(CLI::Range(0, 6));

    auto* solve = app.add_subcommand("solve", "solve for z_g, u_g and F^(g)");
    int genus = 1;
    bool symmetric = false;
    solve->add_option("--genus", genus, "target genus")->check(CLI::Range(1, 6));
    solve->add_flag("--symmetric", symmetric, "print with u == 0 substituted");

    auto* spec = app.add_subcommand("specialize", "concrete-potential series mode");
    std::string potential = "0.5*l^2 + t4*l^4";
    int sgenus = 0;
    int sorder = -1;
    spec->add_option("-V,--potential", potential, "potential, e.g. 0.5*l^2+t3*l^3");
    spec->add_option("--genus", sgenus, "genus of the generating function")
        ->check(CLI::Range(0, 2));
    spec->add_option("--series-order", sorder, "series truncation (coupling degree)");

    auto* verify = app.add_subcommand("verify", "run the identity/property suite");
    std::vector<std::string> only;
    int unwind_m = 5;
    verify->add_option("--only", only,
                       "subset: table motzkin unwinding identities backsub "
                       "grading closedform oracle crossmode rings");
    verify->add_option("--m", unwind_m, "largest unwinding index");

    std::string out_path;
    for (auto* sub : {table, solve, spec, verify}) {
        sub->add_option("--out", out_path, "write to file instead of stdout");
        sub->fallthrough();  // allow the global options after the subcommand
    }

    CLI11_PARSE(app, argc, argv);
    ga.seed_set = seed_opt->count() > 0;

    try {
        RunConfig cfg = resolve_config(ga);
        if (app.got_subcommand(table)) return cmd_table(cfg, max_weight, out_path);
        if (app.got_subcommand(solve))
            return cmd_solve(cfg, genus, symmetric, out_path);
        if (app.got_subcommand(spec))
            return cmd_specialize(cfg, potential, sgenus,
                                  sorder > 0 ? sorder : cfg.order, out_path);
        if (app.got_subcommand(verify))
            return cmd_verify(cfg, only, unwind_m, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const AnsatzExhausted& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitGenerateFail;
    } catch (const RankDeficient& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitGenerateFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitInputError;
}
