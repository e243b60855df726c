// Command-line front end: origami enumeration, Lyapunov tables, divisor
// relations, and the tau-function check suites, with JSON/CSV output.
//
// Exit codes: 0 success, 2 usage or input error, 3 check failed tolerance.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hodgetau/picard.hpp"
#include "hodgetau/tau_elliptic.hpp"
#include "hodgetau/tau_hyperelliptic.hpp"
#include "hodgetau/teichcurve.hpp"

using nlohmann::json;
using namespace hodgetau;

namespace {

constexpr int kExitOk = 0, kExitUsage = 2, kExitCheckFailed = 3;

struct OutputOptions {
    std::string format = "json";
    std::string path;  // empty: stdout
};

void emit(const std::string& text, const OutputOptions& out) {
    if (out.path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out.path);
        if (!f) throw std::invalid_argument("cannot open output file: " + out.path);
        f << text << "\n";
    }
}

void emit_report(const json& j, const std::string& csv, const OutputOptions& out) {
    if (out.format == "json")
        emit(j.dump(2), out);
    else if (out.format == "csv")
        emit(csv, out);
    else
        throw std::invalid_argument("unknown format: " + out.format);
}

json stratum_json(const Stratum& s) {
    json j = json::array();
    for (int m : s.zero_orders) j.push_back(m);
    return j;
}

// ---------------------------------------------------------------- origami

int cmd_origami(int degree, const std::string& stratum_str, int jobs,
                const OutputOptions& out) {
    Stratum s = Stratum::parse(stratum_str);
    auto res = enumerate_origamis(degree, s, jobs);
    if (res.warning)
        throw std::invalid_argument("stratum " + s.label() + " is not realizable at degree " +
                                    std::to_string(degree));
    auto orbits = sl2_orbits(res.origamis);

    json j;
    j["schema"] = "hodgetau-origami/1";
    j["degree"] = degree;
    j["stratum"] = stratum_json(s);
    j["origami_count"] = res.origamis.size();
    j["orbit_count"] = orbits.size();
    j["orbits"] = json::array();
    std::ostringstream csv;
    csv << "degree,stratum,orbit_id,orbit_size,cusp_count,cusp_widths\n";
    for (const auto& c : orbits) {
        json jo;
        jo["orbit_id"] = c.orbit_id;
        jo["orbit_size"] = c.members.size();
        jo["cusps"] = json::array();
        std::string widths;
        for (const Cusp& cusp : cusps(c)) {
            json jc;
            jc["width"] = cusp.width;
            jc["cylinders"] = json::array();
            for (auto [w, h] : cusp.cylinders.cylinders) jc["cylinders"].push_back({w, h});
            jc["representative"] = {{"d", cusp.representative.degree()},
                                    {"h", cusp.representative.h.images()},
                                    {"v", cusp.representative.v.images()}};
            jo["cusps"].push_back(jc);
            if (!widths.empty()) widths += ";";
            widths += std::to_string(cusp.width);
        }
        j["orbits"].push_back(jo);
        csv << degree << "," << s.label() << "," << c.orbit_id << "," << c.members.size() << ","
            << jo["cusps"].size() << "," << widths << "\n";
    }
    emit_report(j, csv.str(), out);
    return kExitOk;
}

// --------------------------------------------------------------- lyapunov

int cmd_lyapunov(const std::string& stratum_str, int dmax, const Rational& k_calib, int jobs,
                 const OutputOptions& out) {
    Stratum s = Stratum::parse(stratum_str);
    if (dmax < 1) throw std::invalid_argument("--dmax must be >= 1");
    auto table = convergence_table(s, 1, dmax, k_calib, jobs);

    json j;
    j["schema"] = "hodgetau-lyapunov/1";
    j["stratum"] = stratum_json(s);
    j["calibration_k"] = k_calib.str();
    j["rows"] = json::array();
    std::ostringstream csv;
    csv << "stratum,degree,orbit_id,orbit_size,K,psi,delta0,kappa,siegel_veech,lyap_sum,"
           "boundary_lyap_sum,boundary_vanishing_ok\n";
    for (const auto& r : table.rows) {
        json jr;
        jr["stratum"] = stratum_json(r.stratum);
        jr["degree"] = r.degree;
        jr["orbit_id"] = r.orbit_id;
        jr["orbit_size"] = r.orbit_size;
        jr["K"] = r.calibration_k.str();
        jr["psi"] = r.psi_number.str();
        jr["delta0"] = r.delta0_number.str();
        jr["kappa"] = r.kappa.str();
        jr["siegel_veech"] = r.siegel_veech.str();
        jr["lyap_sum"] = r.lyap_sum.str();
        jr["boundary_formula_valid"] = r.boundary_formula_valid;
        jr["boundary_vanishing_ok"] = r.boundary_vanishing_ok;
        if (r.boundary_formula_valid) jr["boundary_lyap_sum"] = r.boundary_lyap_sum.str();
        j["rows"].push_back(jr);
        csv << r.stratum.label() << "," << r.degree << "," << r.orbit_id << "," << r.orbit_size
            << "," << r.calibration_k.str() << "," << r.psi_number.str() << ","
            << r.delta0_number.str() << "," << r.kappa.str() << "," << r.siegel_veech.str()
            << "," << r.lyap_sum.str() << ","
            << (r.boundary_formula_valid ? r.boundary_lyap_sum.str() : std::string("-")) << ","
            << (r.boundary_vanishing_ok ? "true" : "false") << "\n";
    }
    j["degree_averages"] = json::array();
    for (auto& [d, avg] : table.degree_averages)
        j["degree_averages"].push_back({{"degree", d}, {"lyap_sum_avg", avg.str()}});
    emit_report(j, csv.str(), out);
    return kExitOk;
}

// ----------------------------------------------------------------- picard

int cmd_picard(int genus, bool verify, const OutputOptions& out) {
    if (genus < 2) throw std::invalid_argument("--genus must be >= 2");
    HodgeFormula hf = hodge_formula(genus);
    DivisorClass tau_rel = tau_divisor_relation(genus);

    json j;
    j["schema"] = "hodgetau-picard/1";
    j["genus"] = genus;
    json coeffs;
    auto names = DivisorClass::basis_names(genus);
    for (int i = 0; i < hf.rhs.basis_size(); ++i) coeffs[names[i]] = hf.rhs.coeff(i).str();
    j["hodge_class"] = {{"relation", "lambda = " + hf.rhs.render()},
                        {"coefficients", coeffs}};
    j["tau_divisor"] = {{"relation", tau_rel.render() + " = 0"}};
    std::ostringstream csv;
    csv << "relation\nlambda = " << hf.rhs.render() << "\n" << tau_rel.render() << " = 0\n";

    if (verify) {
        // 24 * (lambda - rhs) must equal the tau-divisor class exactly
        DivisorClass diff = combine(tau_rel, Rational(-24), hf.relation);
        bool ok = diff.is_zero() &&
                  kappa(Stratum(std::vector<int>(2 * genus - 2, 1))) == Rational(genus - 1, 4);
        j["verified"] = ok;
        if (!ok) {
            emit_report(j, csv.str(), out);
            return kExitCheckFailed;
        }
    }
    emit_report(j, csv.str(), out);
    return kExitOk;
}

// ------------------------------------------------------------- tau genus1

json check_row(const std::string& name, double residual, double tol_, bool& all_ok) {
    bool ok = residual <= tol_;
    all_ok = all_ok && ok;
    return {{"check", name}, {"residual", residual}, {"tolerance", tol_}, {"passed", ok}};
}

int cmd_tau_genus1(double tol, const OutputOptions& out) {
    json j;
    j["schema"] = "hodgetau-tau-genus1/1";
    j["checks"] = json::array();
    bool ok = true;

    // modular weight 24 on a fixed deterministic sample of SL(2,Z) elements
    {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> re(-0.45, 0.45), im(0.9, 1.4);
        std::uniform_int_distribution<int> shear(-2, 2), len(1, 4);
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            std::array<std::array<long, 2>, 2> g{{{1, 0}, {0, 1}}}, S{{{0, -1}, {1, 0}}};
            int n = len(rng);
            for (int i = 0; i < n; ++i) {
                std::array<std::array<long, 2>, 2> t{{{1, shear(rng)}, {0, 1}}}, r{};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        r[a][b] = g[a][0] * t[0][b] + g[a][1] * t[1][b];
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        g[a][b] = r[a][0] * S[0][b] + r[a][1] * S[1][b];
            }
            worst = std::max(worst, modular_factor_check(cplx(re(rng), im(rng)), g));
        }
        j["checks"].push_back(check_row("modular-weight-24", worst, tol, ok));
    }
    {
        auto cusp = cusp_asymptotics_check(1.0, 3.0, 9.0);
        j["checks"].push_back(
            check_row("cusp-exponent-2", std::abs(cusp.fitted_exponent - 2.0), 1e-6, ok));
        j["checks"].push_back(
            check_row("cusp-limit-constant-1", std::abs(cusp.limit_constant - 1.0), 1e-3, ok));
    }
    {
        BergmanCheck bc = bergman_connection_check(EllipticPeriods(1.0, kI));
        j["checks"].push_back(check_row("flat-connection-coefficient", bc.residual, 1e-8, ok));
        j["checks"].push_back(check_row("scaling-identity-genus1", bc.euler_residual, 1e-10, ok));
    }
    j["passed"] = ok;
    std::ostringstream csv;
    csv << "check,residual,tolerance,passed\n";
    for (const auto& c : j["checks"])
        csv << c["check"].get<std::string>() << "," << c["residual"].get<double>() << ","
            << c["tolerance"].get<double>() << "," << (c["passed"].get<bool>() ? "true" : "false")
            << "\n";
    emit_report(j, csv.str(), out);
    return ok ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------- tau genus2

struct CurveInput {
    HyperellipticCurve curve;
    DifferentialSpec spec = DifferentialSpec(cplx(1.0), cplx(1.0));
};

CurveInput parse_curve_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open curve file: " + path);
    json j = json::parse(f);  // json::exception on malformed input
    auto as_cplx = [](const json& v) {
        if (!v.is_array() || v.size() != 2)
            throw std::invalid_argument("complex values must be [re, im] pairs");
        return cplx(v[0].get<double>(), v[1].get<double>());
    };
    const auto& bp = j.at("branch_points");
    if (!bp.is_array() || bp.size() != 6)
        throw std::invalid_argument("branch_points must list exactly 6 [re, im] pairs");
    std::array<cplx, 6> e;
    for (int i = 0; i < 6; ++i) e[i] = as_cplx(bp[i]);
    return {HyperellipticCurve(e), DifferentialSpec(as_cplx(j.at("c0")), as_cplx(j.at("c1")))};
}

json cplx_json(cplx z) { return {z.real(), z.imag()}; }

int cmd_tau_genus2(const std::string& curve_path, const std::string& checks,
                   const OutputOptions& out) {
    CurveInput in = parse_curve_file(curve_path);
    bool want_invariance = checks == "invariance" || checks == "all";
    bool want_ddeg = checks == "ddeg" || checks == "all";
    if (!(checks == "eval" || want_invariance || want_ddeg))
        throw std::invalid_argument("--checks must be eval, invariance, ddeg, or all");

    PeriodData pd = period_data(in.curve);
    TauEvaluation t = tau0_eval(pd, in.spec);

    json j;
    j["schema"] = "hodgetau-tau-genus2/1";
    j["curve"] = json::array();
    for (cplx ei : pd.curve.e) j["curve"].push_back(cplx_json(ei));
    j["period_matrix"] = {cplx_json(pd.sp.at(0, 0)), cplx_json(pd.sp.at(0, 1)),
                          cplx_json(pd.sp.at(1, 1))};
    j["evaluation"] = {{"log_tau", cplx_json(t.log_value)},
                       {"abs_tau", std::abs(t.value)},
                       {"theta_term", cplx_json(t.theta_term)},
                       {"wronskian", cplx_json(t.wronskian)},
                       {"lattice_residual", t.lattice_residual}};
    bool ok = true;
    j["checks"] = json::array();
    j["checks"].push_back(check_row("lattice-consistency", t.lattice_residual, 1e-6, ok));

    if (want_invariance) {
        InvarianceReport rep = invariance_suite(pd, in.spec);
        j["checks"].push_back(check_row("scaling-exponent-6",
                                        std::abs(rep.homogeneity_exponent - 6.0), 1e-4, ok));
        j["checks"].push_back(
            check_row("coordinate-scaling-sum-6", std::abs(rep.euler_sum - 6.0), 1e-3, ok));
        j["checks"].push_back(
            check_row("basepoint-independence", rep.basepoint_residual, 1e-5, ok));
        j["checks"].push_back(
            check_row("basepoint-sheet-independence", rep.hub_sheet_residual, 1e-5, ok));
        j["checks"].push_back(
            check_row("odd-characteristic-independence", rep.odd_char_residual, 1e-5, ok));
        j["checks"].push_back(
            check_row("zero-labelling-independence", rep.zero_label_residual, 1e-5, ok));
    }
    if (want_ddeg) {
        DdegProbe pr = ddeg_exponent_probe(pd, 2, cplx(-1.0, 0.0));
        j["checks"].push_back(check_row("degenerate-locus-exponent-1/3",
                                        std::abs(pr.slope_logtau_logt - 1.0 / 3.0), 0.02, ok));
        j["checks"].push_back(check_row("degenerate-locus-multiplicity-3",
                                        std::abs(pr.slope_logt_logdist - 3.0), 0.05, ok));
    }
    j["passed"] = ok;
    std::ostringstream csv;
    csv << "check,residual,tolerance,passed\n";
    for (const auto& c : j["checks"])
        csv << c["check"].get<std::string>() << "," << c["residual"].get<double>() << ","
            << c["tolerance"].get<double>() << "," << (c["passed"].get<bool>() ? "true" : "false")
            << "\n";
    emit_report(j, csv.str(), out);
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations on moduli of curves with holomorphic differentials"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out.path, "output file (default: stdout)");

    int degree = 1, dmax = 3, genus = 2, jobs = 1;
    std::string stratum, curve_path, checks = "eval", calib = "12";
    double tol = 1e-9;
    bool verify = false;

    auto* c_origami = app.add_subcommand("origami", "enumerate square-tiled surfaces and orbits");
    c_origami->add_option("--degree", degree, "number of squares")->required();
    c_origami->add_option("--stratum", stratum, "comma-separated zero orders (\"\" for torus)");
    c_origami->add_option("--jobs", jobs, "parallelism degree");

    auto* c_lyap = app.add_subcommand("lyapunov", "exponent-sum convergence table");
    c_lyap->add_option("--stratum", stratum, "comma-separated zero orders");
    c_lyap->add_option("--dmax", dmax, "largest degree")->required();
    c_lyap->add_option("--calibration-k", calib, "boundary calibration constant (rational)");
    c_lyap->add_option("--jobs", jobs, "parallelism degree");

    auto* c_picard = app.add_subcommand("picard", "divisor-class relations");
    c_picard->add_option("--genus", genus, "genus (>= 2)")->required();
    c_picard->add_flag("--verify", verify, "assert the exact identities");

    auto* c_tau = app.add_subcommand("tau", "tau-function check suites");
    c_tau->require_subcommand(1);
    auto* c_tau1 = c_tau->add_subcommand("genus1", "torus tau checks");
    bool all_checks = false;
    c_tau1->add_flag("--all-checks", all_checks, "run every check (default behavior)");
    c_tau1->add_option("--tol", tol, "modular-factor tolerance");
    auto* c_tau2 = c_tau->add_subcommand("genus2", "hyperelliptic tau checks");
    c_tau2->add_option("--curve", curve_path, "curve JSON file")->required();
    c_tau2->add_option("--checks", checks, "eval | invariance | ddeg | all");

    // let --format/--out given after a subcommand fall through to the app
    for (CLI::App* sub : {c_origami, c_lyap, c_picard, c_tau, c_tau1, c_tau2})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (*c_origami) return cmd_origami(degree, stratum, jobs, out);
        if (*c_lyap) return cmd_lyapunov(stratum, dmax, Rational::parse(calib), jobs, out);
        if (*c_picard) return cmd_picard(genus, verify, out);
        if (*c_tau1) return cmd_tau_genus1(tol, out);
        if (*c_tau2) return cmd_tau_genus2(curve_path, checks, out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
