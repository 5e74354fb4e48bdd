// cfl: exact nonrelativistic conformal fluid solutions -- catalog discovery,
// residual verification, symmetry transforms, figure-data regeneration and
// symbolic algebra checks. Exit codes: 0 pass, 1 tolerance failure, 2 invalid
// input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfl/algebra.hpp"
#include "cfl/catalog.hpp"
#include "cfl/csv.hpp"
#include "cfl/kinematics.hpp"
#include "cfl/manifest.hpp"
#include "cfl/residual.hpp"
#include "cfl/transform.hpp"
#include "cfl/version.hpp"

namespace fs = std::filesystem;
using namespace cfl;

namespace {

struct FamilyOptions {
    std::string family;
    std::string ell = "1/2";
    std::string z = "1";
    int d = 1;
    double a = 0.5;
    double c = 0.1;
    double t0 = 0.0;
    double gamma = 0.0;
    // quartic / continuity branch
    double c1 = 1.0, c2 = 0.0;
    int sign1 = 1, sign2 = 1, sign = 1;
    std::string half_line = "x>0";
    // acceleration family
    int n = 0;
    double c_minus1 = 0.0, c_0 = 0.0;
    // viscous
    double eta0 = 0.0, xi0 = 0.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--family", family, "solution family (see `cfl catalog`)")->required();
        cmd->add_option("--ell", ell, "group parameter ell as p/q (exact; decimals rejected)");
        cmd->add_option("--z", z, "dynamical exponent z (p/q or decimal)");
        cmd->add_option("--d", d, "spatial dimension 1..3");
        cmd->add_option("--a", a, "equation-of-state constant a > 0");
        cmd->add_option("--c", c, "integration constant c");
        cmd->add_option("--t0", t0, "time offset");
        cmd->add_option("--gamma", gamma, "special conformal parameter (deformed family)");
        cmd->add_option("--c1", c1, "quartic branch constant c1");
        cmd->add_option("--c2", c2, "quartic branch constant c2");
        cmd->add_option("--sign1", sign1, "quartic branch sign of the first radical (+-1)");
        cmd->add_option("--sign2", sign2, "quartic branch sign of the second radical (+-1)");
        cmd->add_option("--sign", sign, "continuity branch sign (+-1)");
        cmd->add_option("--half-line", half_line, "x>0 or x<0");
        cmd->add_option("--n", n, "acceleration index 0..2*ell");
        cmd->add_option("--c-minus1", c_minus1, "acceleration family constant c_{-1}");
        cmd->add_option("--c-0", c_0, "acceleration family constant c_0");
        cmd->add_option("--eta0", eta0, "shear viscosity constant (eta = eta0 rho)");
        cmd->add_option("--xi0", xi0, "volume viscosity constant (xi = xi0 rho)");
    }
};

Rational parse_ell_exact(const std::string& s) {
    if (s.find('.') != std::string::npos)
        throw error(errc::invalid_argument,
                    "ell must be an exact rational p/q; decimal input is rejected");
    return Rational::parse(s);
}

Rational parse_z(const std::string& s) {
    if (s.find('.') != std::string::npos) return Rational::parse_decimal(s);
    return Rational::parse(s);
}

FluidSolution build_solution(const FamilyOptions& o) {
    if (o.half_line != "x>0" && o.half_line != "x<0")
        throw error(errc::invalid_argument, "half-line must be x>0 or x<0");
    const bool positive_half = o.half_line == "x>0";
    if (o.family == "gca-scaling")
        return gca_scaling_solution(
            {EllParameter::validate(parse_ell_exact(o.ell)), o.d, o.a, o.c, o.t0});
    if (o.family == "gca-quartic-1d") {
        Quartic1dParams p;
        p.c1 = o.c1;
        p.c2 = o.c2;
        p.a = o.a;
        p.sign1 = o.sign1;
        p.sign2 = o.sign2;
        p.positive_x = positive_half;
        p.t0 = o.t0;
        return quartic_1d_solution(p);
    }
    if (o.family == "gca-continuity-branch-1d")
        return continuity_branch_1d_solution(o.c, o.a, o.sign, positive_half, o.t0);
    if (o.family == "gca-acceleration")
        return acceleration_solution({EllParameter::validate(parse_ell_exact(o.ell)), o.n, o.c,
                                      o.c_minus1, o.c_0, o.a, o.t0});
    if (o.family == "gca-conformal-deformed")
        return conformal_deformed_solution(
            {EllParameter::validate(parse_ell_exact(o.ell)), o.d, o.a, o.c, 0.0}, o.gamma);
    if (o.family == "lifshitz")
        return lifshitz_scaling_solution({parse_z(o.z), o.d, o.a, o.c, o.t0});
    if (o.family == "viscous-gca-integer" || o.family == "viscous-gca-half-integer" ||
        o.family == "viscous-gca")
        return viscous_solution({EllParameter::validate(parse_ell_exact(o.ell)), o.d, o.a, o.c,
                                 o.eta0, o.xi0, o.t0});
    throw error(errc::invalid_argument,
                "unknown family: " + o.family +
                    " (gca-acceleration-deformed is built via `transform`)");
}

void write_fields_csv(const fs::path& path, const FluidSolution& sol, const GridSpec& grid) {
    std::vector<std::string> cols = {"t"};
    for (int i = 1; i <= sol.dim; ++i) cols.push_back("x" + std::to_string(i));
    cols.push_back("rho");
    for (int i = 1; i <= sol.dim; ++i) cols.push_back("v" + std::to_string(i));
    CsvWriter csv(path.string(), cols);
    auto dom = sol.domain;
    auto pts = sample_grid(grid, [&dom](double t, const Vec& x) { return dom.contains(t, x); });
    for (const auto& p : pts) {
        std::vector<double> row = {p.t};
        for (int i = 0; i < sol.dim; ++i) row.push_back(p.x[i]);
        row.push_back(sol.rho(p.t, p.x));
        auto v = sol.v(p.t, p.x);
        for (int i = 0; i < sol.dim; ++i) row.push_back(v[i]);
        csv.row(row);
    }
}

std::string slug(const Rational& r) {
    std::string s = r.str();
    for (auto& ch : s)
        if (ch == '/') ch = '_';
    return s;
}

// "b=(0.1,0.1)..(0.1,1.0)" -> `count` seeds interpolated linearly
std::vector<Vec> parse_trace_seeds(const std::string& text, int dim, int count) {
    auto fail = [&]() {
        throw error(errc::invalid_argument, "trace spec must look like b=(0.1,0.1)..(0.1,1.0)");
    };
    if (text.rfind("b=", 0) != 0) fail();
    auto dots = text.find("..");
    if (dots == std::string::npos) fail();
    auto parse_vec = [&](std::string s) {
        if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail();
        s = s.substr(1, s.size() - 2);
        Vec v{};
        int i = 0;
        size_t pos = 0;
        while (pos < s.size()) {
            auto comma = s.find(',', pos);
            std::string piece =
                s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (i >= dim) fail();
            try {
                v[i++] = std::stod(piece);
            } catch (const std::exception&) {
                fail();
            }
            pos = comma == std::string::npos ? s.size() : comma + 1;
        }
        if (i != dim) fail();
        return v;
    };
    Vec from = parse_vec(text.substr(2, dots - 2));
    Vec to = parse_vec(text.substr(dots + 2));
    std::vector<Vec> seeds;
    for (int k = 0; k < count; ++k) {
        double w = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        Vec s{};
        for (int i = 0; i < dim; ++i) s[i] = from[i] + (to[i] - from[i]) * w;
        seeds.push_back(s);
    }
    return seeds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cfl: exact conformal-fluid solutions, residual checks and symmetry transforms"};
    app.set_config("--config", "", "line-oriented key=value config file with [command] sections");
    app.require_subcommand(1);

    unsigned workers = 0;
    app.add_option("--workers", workers, "worker pool size (overrides CFL_WORKERS)");

    // ---- catalog -----------------------------------------------------------
    auto* cat = app.add_subcommand("catalog", "list solution families and parameter schemas");
    std::string cat_family;
    bool cat_json = false;
    std::string cat_out;
    cat->add_option("--family", cat_family, "show a single family");
    cat->add_flag("--json", cat_json, "machine-readable manifest");
    cat->add_option("--out", cat_out, "directory for catalog.json + run.manifest");

    // ---- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run governing-equation residuals on a grid");
    FamilyOptions ver_fam;
    ver_fam.add_to(ver);
    std::string ver_grid = "t=2:6:50,x=-10:10:100";
    double ver_tol = 1e-6;
    std::string ver_out = "cfl-out";
    std::string ver_equations = "all";
    std::uint64_t ver_seed = 1;
    std::size_t ver_samples = 10000;
    ver->add_option("--grid", ver_grid, "grid spec, e.g. t=2:6:50,x=-10:10:100");
    ver->add_option("--tol", ver_tol, "relative residual tolerance");
    ver->add_option("--equations", ver_equations, "all | comma list of continuity,euler");
    ver->add_option("--seed", ver_seed, "subsampling seed");
    ver->add_option("--samples", ver_samples, "max sampled grid points");
    ver->add_option("--out", ver_out, "output directory");

    // ---- transform ---------------------------------------------------------
    auto* tra = app.add_subcommand("transform", "apply a symmetry element to a solution");
    FamilyOptions tra_fam;
    tra_fam.add_to(tra);
    std::string tra_spec, tra_trace, tra_grid, tra_out = "cfl-out";
    double tra_special = 0.0, tra_tol = 1e-6;
    bool tra_check_closed = false, tra_verify = false;
    int tra_trace_count = 10;
    double tra_trace_t0 = 0.05, tra_trace_t1 = 1.0, tra_trace_h = 1e-3;
    tra->add_option("--transform", tra_spec,
                    R"(JSON element: {"sl2": ...} | {"accel": ...} | {"lifshitz": ...})");
    tra->add_option("--special-conformal", tra_special, "shortcut for the sl2 map t' = t/(1-g t)");
    tra->add_flag("--check-closed-form", tra_check_closed,
                  "compare the image with the closed-form conformal deformation");
    tra->add_flag("--verify", tra_verify, "run the residual suite on the image");
    tra->add_option("--tol", tra_tol, "relative residual tolerance for --verify");
    tra->add_option("--grid", tra_grid, "grid for fields.csv / --verify");
    tra->add_option("--trace", tra_trace, "orbit seeds, e.g. b=(0.1,0.1)..(0.1,1.0)");
    tra->add_option("--trace-count", tra_trace_count, "number of traced orbits");
    tra->add_option("--trace-t0", tra_trace_t0, "orbit start time");
    tra->add_option("--trace-t1", tra_trace_t1, "orbit end time");
    tra->add_option("--trace-h", tra_trace_h, "orbit integrator step");
    tra->add_option("--out", tra_out, "output directory");

    // ---- figures -----------------------------------------------------------
    auto* fig = app.add_subcommand("figures", "regenerate figure data (fig1..fig5)");
    std::string fig_which;
    std::string fig_out = "cfl-out";
    int fig_nt = 0, fig_nx = 0, fig_mass_res = 256;
    fig->add_option("which", fig_which, "fig1 | fig2 | fig3 | fig4 | fig5")->required();
    fig->add_option("--nt", fig_nt, "time samples (0 = figure default)");
    fig->add_option("--nx", fig_nx, "space samples per axis (0 = figure default)");
    fig->add_option("--mass-res", fig_mass_res, "quadrature resolution for mass curves");
    fig->add_option("--out", fig_out, "output directory");

    // ---- algebra -----------------------------------------------------------
    auto* alg = app.add_subcommand("algebra", "verify the symmetry algebra structure relations");
    std::string alg_family, alg_ell = "1/2", alg_z = "1", alg_out;
    int alg_d = 1;
    bool alg_no_jacobi = false;
    alg->add_option("family", alg_family, "gca | lifshitz")->required();
    alg->add_option("--ell", alg_ell, "group parameter for gca (exact p/q)");
    alg->add_option("--z", alg_z, "dynamical exponent for lifshitz");
    alg->add_option("--d", alg_d, "spatial dimension 1..3");
    alg->add_flag("--no-jacobi", alg_no_jacobi, "skip the Jacobi identity sweep");
    alg->add_option("--out", alg_out, "directory for algebra.json + run.manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (workers >= 1) {
        std::string w = std::to_string(workers);
        setenv("CFL_WORKERS", w.c_str(), 1);
    }

    auto command_line = [&]() {
        std::string s;
        for (int i = 1; i < argc; ++i) {
            if (i > 1) s += ' ';
            s += argv[i];
        }
        return s;
    };

    try {
        // ---- catalog --------------------------------------------------------
        if (*cat) {
            auto manifest = catalog_manifest();
            if (!cat_family.empty()) {
                json filtered = json::array();
                for (const auto& entry : manifest)
                    if (entry["family"] == cat_family) filtered.push_back(entry);
                if (filtered.empty())
                    throw error(errc::invalid_argument, "unknown family: " + cat_family);
                manifest = filtered;
            }
            if (cat_json) {
                std::cout << manifest.dump(2) << "\n";
            } else {
                for (const auto& entry : manifest) {
                    std::cout << entry["family"].get<std::string>() << "\n  "
                              << entry["description"].get<std::string>() << "\n";
                    for (auto& [k, v] : entry["parameters"].items())
                        std::cout << "    " << k << ": " << v.get<std::string>() << "\n";
                    for (auto& [k, v] : entry["constraints"].items())
                        std::cout << "    [" << k << "] " << v.get<std::string>() << "\n";
                }
            }
            if (!cat_out.empty()) {
                fs::create_directories(cat_out);
                fs::path f = fs::path(cat_out) / "catalog.json";
                std::ofstream(f) << manifest.dump(2) << "\n";
                write_manifest(cat_out, command_line(), app.config_to_str(true, false), {f});
            }
            return 0;
        }

        // ---- verify ---------------------------------------------------------
        if (*ver) {
            auto sol = build_solution(ver_fam);
            auto grid = GridSpec::parse(ver_grid, sol.dim);
            grid.seed = ver_seed;
            grid.max_points = ver_samples;
            fs::create_directories(ver_out);

            std::vector<Equation> eqs;
            for (Equation eq : governing_equations(sol)) {
                std::string name = equation_name(eq);
                if (ver_equations == "all" || ver_equations.find(name) != std::string::npos ||
                    (ver_equations.find("euler") != std::string::npos &&
                     name.rfind("euler", 0) == 0))
                    eqs.push_back(eq);
            }
            if (eqs.empty()) throw error(errc::invalid_argument, "no equations selected");

            bool pass = true;
            json report;
            report["solution"] = sol.id();
            report["params"] = sol.params;
            report["notes"] = sol.notes;
            report["tolerance"] = ver_tol;
            report["equations"] = json::array();
            std::vector<fs::path> outputs;
            for (Equation eq : eqs) {
                auto rep = run_residual(sol, eq, grid);
                fs::path csv = fs::path(ver_out) / (std::string(equation_name(eq)) + ".csv");
                std::ofstream os(csv);
                rep.write_csv(os, sol.dim);
                os.close();
                outputs.push_back(csv);
                bool ok = rep.max_rel <= ver_tol;
                pass = pass && ok;
                auto j = rep.to_json();
                j["pass"] = ok;
                report["equations"].push_back(j);
                std::cout << equation_name(eq) << ": max_rel=" << format_double(rep.max_rel)
                          << " max_abs=" << format_double(rep.max_abs)
                          << " rms=" << format_double(rep.rms) << " (tol "
                          << format_double(ver_tol) << ") " << (ok ? "PASS" : "FAIL") << "\n";
            }
            report["pass"] = pass;
            fs::path rj = fs::path(ver_out) / "report.json";
            std::ofstream(rj) << report.dump(2) << "\n";
            outputs.push_back(rj);
            write_manifest(ver_out, command_line(), app.config_to_str(true, false), outputs);
            return pass ? 0 : 1;
        }

        // ---- transform ------------------------------------------------------
        if (*tra) {
            auto sol = build_solution(tra_fam);
            TransformSpec spec;
            if (!tra_spec.empty()) spec = parse_transform(json::parse(tra_spec));
            else if (tra_special != 0.0) spec = Sl2Element::special_conformal(tra_special);
            else
                throw error(errc::invalid_argument,
                            "transform needs --transform or --special-conformal");
            auto image = apply_transform(spec, sol);

            fs::create_directories(tra_out);
            std::vector<fs::path> outputs;
            json report;
            report["base"] = sol.id();
            report["image_params"] = image.params;
            bool pass = true;

            if (tra_check_closed) {
                if (!std::holds_alternative<Sl2Element>(spec) || sol.family != Family::GcaScaling)
                    throw error(errc::invalid_argument,
                                "--check-closed-form needs a special-conformal map of gca-scaling");
                auto g = std::get<Sl2Element>(spec);
                if (g.alpha != 1.0 || g.beta != 0.0)
                    throw error(errc::invalid_argument,
                                "--check-closed-form needs the map t' = t/(1 - g t)");
                double gam = -g.gamma;
                auto closed = conformal_deformed_solution(
                    {*sol.ell, sol.dim, sol.params["a"].get<double>(),
                     sol.params["c"].get<double>(), 0.0},
                    gam);
                double worst = 0.0;
                for (double t : linspace(2.0, 6.0, 9)) {
                    for (double xv : linspace(-5.0, 5.0, 11)) {
                        Vec x{xv, sol.dim > 1 ? 0.8 : 0.0, sol.dim > 2 ? -0.4 : 0.0};
                        worst = std::max(worst, std::abs(image.rho(t, x) - closed.rho(t, x)) /
                                                    std::max(1.0, closed.rho(t, x)));
                        for (int i = 0; i < sol.dim; ++i)
                            worst = std::max(worst,
                                             std::abs(image.v(t, x)[i] - closed.v(t, x)[i]) /
                                                 std::max(1.0, std::abs(closed.v(t, x)[i])));
                    }
                }
                report["closed_form_max_deviation"] = worst;
                std::cout << "closed-form max deviation: " << format_double(worst) << "\n";
                pass = pass && worst <= 1e-12;
            }

            if (!tra_grid.empty()) {
                auto grid = GridSpec::parse(tra_grid, image.dim);
                fs::path f = fs::path(tra_out) / "fields.csv";
                write_fields_csv(f, image, grid);
                outputs.push_back(f);
                if (tra_verify) {
                    report["verify"] = json::array();
                    for (Equation eq : governing_equations(image)) {
                        auto rep = run_residual(image, eq, grid);
                        bool ok = rep.max_rel <= tra_tol;
                        pass = pass && ok;
                        auto j = rep.to_json();
                        j["pass"] = ok;
                        report["verify"].push_back(j);
                        std::cout << equation_name(eq)
                                  << ": max_rel=" << format_double(rep.max_rel) << " (tol "
                                  << format_double(tra_tol) << ") " << (ok ? "PASS" : "FAIL")
                                  << "\n";
                    }
                }
            }

            if (!tra_trace.empty()) {
                auto seeds = parse_trace_seeds(tra_trace, image.dim, tra_trace_count);
                for (size_t s = 0; s < seeds.size(); ++s) {
                    auto orb =
                        trace_orbit(image, seeds[s], tra_trace_t0, tra_trace_t1, tra_trace_h);
                    char name[32];
                    std::snprintf(name, sizeof(name), "orbit_%02zu.csv", s + 1);
                    fs::path f = fs::path(tra_out) / name;
                    std::vector<std::string> cols = {"t"};
                    for (int i = 1; i <= image.dim; ++i) cols.push_back("x" + std::to_string(i));
                    CsvWriter csv(f.string(), cols);
                    for (const auto& [t, x] : orb.samples) {
                        std::vector<double> row = {t};
                        for (int i = 0; i < image.dim; ++i) row.push_back(x[i]);
                        csv.row(row);
                    }
                    outputs.push_back(f);
                }
                std::cout << seeds.size() << " orbit files written\n";
            }

            report["pass"] = pass;
            fs::path rj = fs::path(tra_out) / "report.json";
            std::ofstream(rj) << report.dump(2) << "\n";
            outputs.push_back(rj);
            write_manifest(tra_out, command_line(), app.config_to_str(true, false), outputs);
            return pass ? 0 : 1;
        }

        // ---- figures --------------------------------------------------------
        if (*fig) {
            fs::create_directories(fig_out);
            std::vector<fs::path> outputs;
            auto ell_of = [](const char* s) { return EllParameter::validate(Rational::parse(s)); };

            if (fig_which == "fig1") {
                int nt = fig_nt ? fig_nt : 50, nx = fig_nx ? fig_nx : 100;
                for (const char* l : {"1/2", "5/2", "9/2", "13/2"}) {
                    auto sol = gca_scaling_solution({ell_of(l), 1, 0.5, 0.1});
                    fs::path f =
                        fs::path(fig_out) / ("fig1_ell_" + slug(Rational::parse(l)) + ".csv");
                    CsvWriter csv(f.string(), {"t", "x", "rho"});
                    for (double t : linspace(2.0, 6.0, nt))
                        for (double x : linspace(-10.0, 10.0, nx))
                            csv.row({t, x, sol.rho(t, {x, 0, 0})});
                    outputs.push_back(f);
                }
            } else if (fig_which == "fig2") {
                int nx = fig_nx ? fig_nx : 21;
                auto sol = gca_scaling_solution({ell_of("1"), 2, 0.5, 0.1});
                fs::path f = fs::path(fig_out) / "fig2_flow.csv";
                CsvWriter csv(f.string(), {"x1", "x2", "v1", "v2"});
                for (double x1 : linspace(-1.0, 1.0, nx))
                    for (double x2 : linspace(-1.0, 1.0, nx)) {
                        auto v = sol.v(10.0, {x1, x2, 0});
                        csv.row({x1, x2, v[0], v[1]});
                    }
                outputs.push_back(f);
            } else if (fig_which == "fig3") {
                int nt = fig_nt ? fig_nt : 45;
                for (const char* l : {"1/2", "5/2"}) {
                    auto sol = gca_scaling_solution({ell_of(l), 2, 0.5, 0.1});
                    fs::path f =
                        fs::path(fig_out) / ("fig3_mass_ell_" + slug(Rational::parse(l)) + ".csv");
                    CsvWriter csv(f.string(), {"t", "mass"});
                    for (double t : linspace(0.8, 3.0, nt))
                        csv.row({t, mass_in_ball(sol, {0, 0, 0}, 1.0, t, {fig_mass_res})});
                    outputs.push_back(f);
                }
            } else if (fig_which == "fig4") {
                auto base = gca_scaling_solution({ell_of("1"), 2, 0.5, 0.1});
                const double s3 = std::sqrt(3.0) / 2.0;
                AccelerationElement g;
                g.a = {Vec{0, 1, 0}, Vec{s3, -0.5, 0}, Vec{-s3, -0.5, 0}};
                auto img = apply_acceleration(g, base);
                const double t0 = 0.05, t1 = 1.0, h = 1e-3;
                for (int k = 0; k < 10; ++k) {
                    double b2 = 0.1 + 0.1 * k;
                    Vec seed{0.1 * t0 - s3 * t0 * t0, 1.0 + b2 * t0 - 0.5 * t0 * t0, 0};
                    auto orb = trace_orbit(img, seed, t0, t1, h);
                    char name[32];
                    std::snprintf(name, sizeof(name), "fig4_orbit_%02d.csv", k + 1);
                    fs::path f = fs::path(fig_out) / name;
                    CsvWriter csv(f.string(), {"t", "x1", "x2"});
                    for (const auto& [t, x] : orb.samples) csv.row({t, x[0], x[1]});
                    outputs.push_back(f);
                }
            } else if (fig_which == "fig5") {
                int nt = fig_nt ? fig_nt : 60;
                for (const char* zs : {"3/5", "7/10", "4/5"}) {
                    auto sol = lifshitz_scaling_solution({Rational::parse(zs), 2, 0.5, 0.1});
                    fs::path f =
                        fs::path(fig_out) / ("fig5_mass_z_" + slug(Rational::parse(zs)) + ".csv");
                    CsvWriter csv(f.string(), {"t", "mass"});
                    for (double t : linspace(0.1, 10.0, nt))
                        csv.row({t, mass_in_ball(sol, {0, 0, 0}, 1.0, t, {fig_mass_res})});
                    outputs.push_back(f);
                }
            } else {
                throw error(errc::invalid_argument, "unknown figure: " + fig_which);
            }
            std::cout << outputs.size() << " data files written to " << fig_out << "\n";
            write_manifest(fig_out, command_line(), app.config_to_str(true, false), outputs);
            return 0;
        }

        // ---- algebra --------------------------------------------------------
        if (*alg) {
            StructureReport rep;
            Rational param;
            AlgebraFamily family;
            if (alg_family == "gca") {
                family = AlgebraFamily::GalileiConformal;
                param = parse_ell_exact(alg_ell);
                rep = verify_gca_structure(EllParameter::validate(param), alg_d);
            } else if (alg_family == "lifshitz") {
                family = AlgebraFamily::Lifshitz;
                param = parse_z(alg_z);
                rep = verify_lifshitz_structure(param, alg_d);
            } else {
                throw error(errc::invalid_argument, "algebra family must be gca or lifshitz");
            }
            size_t jacobi_zero = 0, jacobi_total = 0;
            if (!alg_no_jacobi) {
                auto gens = all_generators(family, param, alg_d);
                for (size_t i = 0; i < gens.size(); ++i)
                    for (size_t j = i + 1; j < gens.size(); ++j)
                        for (size_t k = j + 1; k < gens.size(); ++k) {
                            ++jacobi_total;
                            if (jacobiator(gens[i], gens[j], gens[k]).is_zero()) ++jacobi_zero;
                        }
            }
            bool pass = rep.all_match() && jacobi_zero == jacobi_total;
            std::cout << "relations checked: " << rep.entries.size()
                      << ", exact: " << (rep.all_match() ? "yes" : "NO") << "\n";
            if (!alg_no_jacobi)
                std::cout << "jacobi triples: " << jacobi_total << ", zero: " << jacobi_zero
                          << "\n";
            for (const auto& e : rep.entries)
                if (!e.match)
                    std::cout << "MISMATCH " << e.relation << "\n  lhs: " << e.lhs
                              << "\n  rhs: " << e.rhs << "\n";
            if (!alg_out.empty()) {
                fs::create_directories(alg_out);
                auto j = rep.to_json();
                j["jacobi_triples"] = jacobi_total;
                j["jacobi_zero"] = jacobi_zero;
                fs::path f = fs::path(alg_out) / "algebra.json";
                std::ofstream(f) << j.dump(2) << "\n";
                write_manifest(alg_out, command_line(), app.config_to_str(true, false), {f});
            }
            return pass ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
