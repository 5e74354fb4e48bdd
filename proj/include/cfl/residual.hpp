#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "cfl/catalog.hpp"
#include "cfl/core.hpp"
#include "cfl/grid.hpp"
#include "cfl/material.hpp"
#include "cfl/parallel.hpp"

namespace cfl {

enum class Equation { Continuity, EulerGalilei, EulerLifshitz, EulerViscous };

inline const char* equation_name(Equation e) {
    switch (e) {
        case Equation::Continuity: return "continuity";
        case Equation::EulerGalilei: return "euler-galilei";
        case Equation::EulerLifshitz: return "euler-lifshitz";
        case Equation::EulerViscous: return "euler-viscous";
    }
    return "unknown";
}

struct ResidualPoint {
    double t;
    Vec x;
    double residual; // worst component magnitude
    double max_term; // largest individual term magnitude at this point
};

/// Residuals of one governing equation over a sampled grid. The relative
/// normalization divides each residual by the largest term entering it, so
/// power-law decay of the terms cannot fake convergence.
struct ResidualReport {
    std::string solution_id;
    Equation equation = Equation::Continuity;
    std::string engine;
    json grid_info;
    StencilConfig config;
    std::vector<ResidualPoint> points;
    double max_abs = 0.0;
    double rms = 0.0;
    double max_rel = 0.0;
    json extra; // cross-checks, flags

    void reduce() {
        max_abs = rms = max_rel = 0.0;
        // fixed-order reduction keeps norms bit-identical across worker counts
        for (const auto& p : points) {
            max_abs = std::max(max_abs, std::abs(p.residual));
            rms += p.residual * p.residual;
            max_rel = std::max(max_rel, std::abs(p.residual) / std::max(p.max_term, 1e-300));
        }
        if (!points.empty()) rms = std::sqrt(rms / static_cast<double>(points.size()));
    }

    json to_json() const {
        json j;
        j["solution"] = solution_id;
        j["equation"] = equation_name(equation);
        j["engine"] = engine;
        j["grid"] = grid_info;
        j["config"] = {{"order", config.order},
                       {"h_t", config.h_t},
                       {"h_x", config.h_x},
                       {"h_rel", config.h_rel}};
        j["points"] = points.size();
        j["norms"] = {{"max_abs", max_abs}, {"rms", rms}, {"max_rel", max_rel}};
        if (!extra.is_null()) j["extra"] = extra;
        return j;
    }

    void write_csv(std::ostream& os, int dim) const {
        os << "t";
        for (int i = 1; i <= dim; ++i) os << ",x" << i;
        os << ",residual,max_term,relative\n";
        char buf[512];
        for (const auto& p : points) {
            double rel = std::abs(p.residual) / std::max(p.max_term, 1e-300);
            int n = 0;
            n += std::snprintf(buf + n, sizeof(buf) - static_cast<size_t>(n), "%.17g", p.t);
            for (int i = 0; i < dim; ++i)
                n += std::snprintf(buf + n, sizeof(buf) - static_cast<size_t>(n), ",%.17g", p.x[i]);
            std::snprintf(buf + n, sizeof(buf) - static_cast<size_t>(n), ",%.17g,%.17g,%.17g",
                          p.residual, p.max_term, rel);
            os << buf << "\n";
        }
    }
};

namespace detail {

/// keep-predicate: the point plus its outer-difference stencil must stay in
/// the solution domain (margins per the stencil footprint).
inline std::function<bool(double, const Vec&)> stencil_keep(const FluidSolution& sol,
                                                            const StencilConfig& cfg,
                                                            double extra_margin_factor = 1.0) {
    return [&sol, cfg, extra_margin_factor](double t, const Vec& x) {
        double mt = 2.0 * step_t(cfg, t) * extra_margin_factor;
        if (!sol.domain.contains(t, x)) return false;
        Vec probe = x;
        if (!sol.domain.contains(t - mt, probe) || !sol.domain.contains(t + mt, probe))
            return false;
        for (int i = 0; i < sol.dim; ++i) {
            double mx = 2.0 * step_x(cfg, x[i]) * extra_margin_factor;
            probe = x;
            probe[i] = x[i] - mx;
            if (!sol.domain.contains(t, probe)) return false;
            probe[i] = x[i] + mx;
            if (!sol.domain.contains(t, probe)) return false;
        }
        return true;
    };
}

} // namespace detail

// ---------------------------------------------------------------------------
// Continuity
// ---------------------------------------------------------------------------

/// r = d rho/dt + sum_i d(rho v_i)/dx_i via central differences on the
/// fluxes. The grid must sit inside the domain with stencil margin.
inline ResidualReport continuity_residual(const FluidSolution& sol, const GridSpec& grid,
                                          StencilConfig cfg = {}) {
    auto pts = sample_grid(grid, detail::stencil_keep(sol, cfg));
    ResidualReport rep;
    rep.solution_id = sol.id();
    rep.equation = Equation::Continuity;
    rep.engine = "fd";
    rep.grid_info = grid.to_json();
    rep.config = cfg;
    rep.points.resize(pts.size());

    parallel_for(pts.size(), [&](size_t i) {
        const double t = pts[i].t;
        const Vec x = pts[i].x;
        double dt_rho = detail::central_diff(
            [&](double tt) { return sol.density(tt, x); }, t, detail::step_t(cfg, t), cfg.order);
        double r = dt_rho;
        double max_term = std::abs(dt_rho);
        for (int ax = 0; ax < sol.dim; ++ax) {
            double dflux = detail::central_diff(
                [&](double u) {
                    Vec q = x;
                    q[ax] = u;
                    return sol.density(t, q) * sol.velocity(t, q)[ax];
                },
                x[ax], detail::step_x(cfg, x[ax]), cfg.order);
            r += dflux;
            max_term = std::max(max_term, std::abs(dflux));
        }
        rep.points[i] = {t, x, r, max_term};
    });
    rep.reduce();
    return rep;
}

// ---------------------------------------------------------------------------
// Euler (conformal Galilei): rho D^(2l) v_i = -d p/dx_i
// ---------------------------------------------------------------------------

namespace detail {

/// Evaluator for D^(order) v, fixed per report: the exact affine iterate when
/// the solution carries the tag, nested FD otherwise.
inline std::function<Vec(double, const Vec&)> material_term_engine(const FluidSolution& sol,
                                                                   int order,
                                                                   const StencilConfig& cfg) {
    if (sol.affine) {
        AffineFlow it = material_derivative_affine(*sol.affine, order);
        double t_offset = sol.affine->t_offset;
        int dim = sol.dim;
        return [it, t_offset, dim](double t, const Vec& x) {
            double tau = t + t_offset;
            Vec out{};
            double a = it.A.eval(tau);
            for (int i = 0; i < dim; ++i) out[i] = a * x[i] + it.B[i].eval(tau);
            return out;
        };
    }
    return [&sol, order, cfg](double t, const Vec& x) {
        return material_derivative_fd(sol, t, x, order, cfg);
    };
}

inline Vec pressure_gradient(const FluidSolution& sol, double t, const Vec& x,
                             const StencilConfig& cfg) {
    Vec g{};
    for (int ax = 0; ax < sol.dim; ++ax) {
        g[ax] = detail::central_diff(
            [&](double u) {
                Vec q = x;
                q[ax] = u;
                return sol.eos.pressure(sol.density(t, q));
            },
            x[ax], detail::step_x(cfg, x[ax]), cfg.order);
    }
    return g;
}

inline ResidualReport euler_report_common(const FluidSolution& sol, const GridSpec& grid,
                                          StencilConfig cfg, Equation eq, int md_order) {
    // margin factor covers the nested stencil of the FD derivative engine
    double margin = sol.affine ? 1.0 : static_cast<double>(md_order * (cfg.order / 2));
    auto pts = sample_grid(grid, detail::stencil_keep(sol, cfg, std::max(1.0, margin)));
    ResidualReport rep;
    rep.solution_id = sol.id();
    rep.equation = eq;
    rep.grid_info = grid.to_json();
    rep.config = cfg;
    rep.points.resize(pts.size());
    bool analytic = sol.affine.has_value();
    rep.engine = analytic ? "affine-exact + fd-gradient" : "nested-fd";
    auto md_engine = detail::material_term_engine(sol, md_order, cfg);

    parallel_for(pts.size(), [&](size_t i) {
        const double t = pts[i].t;
        const Vec x = pts[i].x;
        double rho = sol.density(t, x);
        Vec md = md_engine(t, x);
        Vec gp = detail::pressure_gradient(sol, t, x, cfg);
        double worst = 0.0, max_term = 0.0;
        for (int c = 0; c < sol.dim; ++c) {
            double lhs = rho * md[c];
            double r = lhs + gp[c];
            worst = std::max(worst, std::abs(r));
            max_term = std::max({max_term, std::abs(lhs), std::abs(gp[c])});
        }
        rep.points[i] = {t, x, worst, max_term};
    });
    rep.reduce();

    // cross-check the exact derivative engine against the nested FD engine on
    // a small subsample whenever both paths are available and affordable
    double lattice_nodes =
        std::pow(2.0 * md_order * (cfg.order / 2) + 1.0, 1.0 + sol.dim);
    if (analytic && md_order <= 13 && lattice_nodes <= 250000.0) {
        double worst = 0.0;
        size_t n_cross = std::min<size_t>(pts.size(), 8);
        for (size_t i = 0; i < n_cross; ++i) {
            size_t ix = i * std::max<size_t>(1, pts.size() / std::max<size_t>(1, n_cross));
            if (ix >= pts.size()) break;
            const auto& p = pts[ix];
            Vec exact = affine_iterate_eval(*sol.affine, md_order, p.t, p.x, sol.dim);
            Vec fd = material_derivative_fd(sol, p.t, p.x, md_order, cfg);
            for (int c = 0; c < sol.dim; ++c) {
                double err = std::abs(fd[c] - exact[c]) / std::max(1.0, std::abs(exact[c]));
                worst = std::max(worst, err);
            }
        }
        rep.extra["fd_cross_check"] = {{"points", n_cross},
                                       {"max_rel_disagreement", worst},
                                       {"tolerance", fd_tolerance(md_order)}};
    }
    return rep;
}

} // namespace detail

/// rho D^(2l) v_i + d_i p with p = a rho^(1+1/(l d)). Solutions carrying the
/// affine tag use the exact Laurent engine for D^(2l) v (cross-checked against
/// nested FD); everything else runs the nested FD engine.
inline ResidualReport euler_residual_galilei(const FluidSolution& sol, const GridSpec& grid,
                                             StencilConfig cfg = {}) {
    if (!sol.ell) throw error(errc::parameter_mismatch, "solution has no ell parameter");
    int k = static_cast<int>(sol.ell->doubled());
    if (!sol.affine && k > 13)
        throw error(errc::depth_exceeded, "nested FD beyond depth 13 is not meaningful");
    return detail::euler_report_common(sol, grid, cfg, Equation::EulerGalilei, k);
}

/// rho D v_i + d_i p with the Lifshitz equation of state.
inline ResidualReport euler_residual_lifshitz(const FluidSolution& sol, const GridSpec& grid,
                                              StencilConfig cfg = {}) {
    if (!sol.z) throw error(errc::parameter_mismatch, "solution has no dynamical exponent");
    return detail::euler_report_common(sol, grid, cfg, Equation::EulerLifshitz, 1);
}

// ---------------------------------------------------------------------------
// Viscous Euler: rho D^(2l) v_i = -d_i p + d_j sigma_ji
// ---------------------------------------------------------------------------

namespace detail {

/// sigma_ij = eta (d_j v_i + d_i v_j - (2/d) delta_ij div v) + xi delta_ij div v,
/// assembled from central differences of the velocity.
inline void strain_tensor(const FluidSolution& sol, double t, const Vec& x,
                          const StencilConfig& cfg, double sigma[3][3]) {
    double grad[3][3] = {};
    for (int j = 0; j < sol.dim; ++j) {
        Vec dv = Vec{};
        double h = detail::step_x(cfg, x[j]);
        for (int c = 0; c < sol.dim; ++c)
            dv[c] = detail::central_diff(
                [&](double u) {
                    Vec q = x;
                    q[j] = u;
                    return sol.velocity(t, q)[c];
                },
                x[j], h, cfg.order);
        for (int c = 0; c < sol.dim; ++c) grad[c][j] = dv[c];
    }
    double div = 0.0;
    for (int c = 0; c < sol.dim; ++c) div += grad[c][c];
    double eta = sol.eta(t, x), xi = sol.xi(t, x);
    for (int i = 0; i < sol.dim; ++i)
        for (int j = 0; j < sol.dim; ++j) {
            double shear = grad[i][j] + grad[j][i];
            if (i == j) shear -= 2.0 * div / sol.dim;
            sigma[i][j] = eta * shear + (i == j ? xi * div : 0.0);
        }
}

} // namespace detail

/// Viscous momentum residual; the stress divergence is a nested difference of
/// the strain tensor, which itself differentiates the velocity.
inline ResidualReport euler_residual_viscous(const FluidSolution& sol, const GridSpec& grid,
                                             StencilConfig cfg = {}) {
    if (!sol.viscosity) throw error(errc::parameter_mismatch, "solution carries no viscosity");
    if (!sol.ell) throw error(errc::parameter_mismatch, "solution has no ell parameter");
    int k = static_cast<int>(sol.ell->doubled());
    auto pts = sample_grid(grid, detail::stencil_keep(sol, cfg, 2.0));
    ResidualReport rep;
    rep.solution_id = sol.id();
    rep.equation = Equation::EulerViscous;
    rep.grid_info = grid.to_json();
    rep.config = cfg;
    rep.engine = sol.affine ? "affine-exact + fd-gradient" : "nested-fd";
    rep.points.resize(pts.size());
    auto md_engine = detail::material_term_engine(sol, k, cfg);

    parallel_for(pts.size(), [&](size_t i) {
        const double t = pts[i].t;
        const Vec x = pts[i].x;
        double rho = sol.density(t, x);
        Vec md = md_engine(t, x);
        Vec gp = detail::pressure_gradient(sol, t, x, cfg);
        // divergence of sigma: d_j sigma_ji
        Vec div_sigma{};
        for (int j = 0; j < sol.dim; ++j) {
            double h = detail::step_x(cfg, x[j]);
            for (int c = 0; c < sol.dim; ++c) {
                div_sigma[c] += detail::central_diff(
                    [&](double u) {
                        Vec q = x;
                        q[j] = u;
                        double sigma[3][3];
                        detail::strain_tensor(sol, t, q, cfg, sigma);
                        return sigma[j][c];
                    },
                    x[j], h, cfg.order);
            }
        }
        double worst = 0.0, max_term = 0.0;
        for (int c = 0; c < sol.dim; ++c) {
            double lhs = rho * md[c];
            double r = lhs + gp[c] - div_sigma[c];
            worst = std::max(worst, std::abs(r));
            max_term = std::max({max_term, std::abs(lhs), std::abs(gp[c]), std::abs(div_sigma[c])});
        }
        rep.points[i] = {t, x, worst, max_term};
    });
    rep.reduce();
    return rep;
}

/// Dispatch on the solution family: which equations govern it.
inline std::vector<Equation> governing_equations(const FluidSolution& sol) {
    if (sol.viscosity) return {Equation::Continuity, Equation::EulerViscous};
    if (sol.z) return {Equation::Continuity, Equation::EulerLifshitz};
    return {Equation::Continuity, Equation::EulerGalilei};
}

inline ResidualReport run_residual(const FluidSolution& sol, Equation eq, const GridSpec& grid,
                                   StencilConfig cfg = {}) {
    switch (eq) {
        case Equation::Continuity: return continuity_residual(sol, grid, cfg);
        case Equation::EulerGalilei: return euler_residual_galilei(sol, grid, cfg);
        case Equation::EulerLifshitz: return euler_residual_lifshitz(sol, grid, cfg);
        case Equation::EulerViscous: return euler_residual_viscous(sol, grid, cfg);
    }
    throw error(errc::invalid_argument, "unknown equation");
}

// ---------------------------------------------------------------------------
// First integrals of the reduced 1+1 dimensional system
// ---------------------------------------------------------------------------

struct FirstIntegralReport {
    std::vector<double> y;
    std::vector<double> I1, I2;
    double I1_mean = 0, I2_mean = 0;
    double I1_max_dev = 0, I2_max_dev = 0; // max |I - mean|

    json to_json() const {
        return {{"points", y.size()},
                {"I1_mean", I1_mean},
                {"I2_mean", I2_mean},
                {"I1_max_dev", I1_max_dev},
                {"I2_max_dev", I2_max_dev}};
    }
};

/// Evaluates the two first integrals (u - y/2) w / y and (u^2 + 3 a w^2)/y - u
/// of the reduced ODE system over a y-grid, reconstructing u = x v, w = x rho
/// from the fields themselves. Constancy certifies the reduction.
inline FirstIntegralReport ode_first_integral_check(const FluidSolution& sol,
                                                    const std::vector<double>& y_grid) {
    if (sol.family != Family::GcaQuartic1d && sol.family != Family::GcaContinuityBranch1d)
        throw error(errc::invalid_argument, "first integrals defined for the 1+1d branches only");
    double a = sol.params.at("a").get<double>();
    double t0 = sol.params.at("t0").get<double>();
    bool pos_x = sol.params.at("half_line").get<std::string>() == "x>0";
    double t_ref = 1.0 - t0; // tau = 1

    FirstIntegralReport rep;
    for (double y : y_grid) {
        if (!(y > 0)) throw error(errc::domain_exceeded, "similarity variable must be positive");
        double x = (pos_x ? 1.0 : -1.0) * std::sqrt(y);
        Vec xv{x, 0, 0};
        double u = x * sol.velocity(t_ref, xv)[0];
        double w = x * sol.density(t_ref, xv);
        rep.y.push_back(y);
        rep.I1.push_back((u - 0.5 * y) * w / y);
        rep.I2.push_back((u * u + 3.0 * a * w * w) / y - u);
    }
    auto finish = [](const std::vector<double>& v, double& mean, double& dev) {
        mean = 0;
        for (double q : v) mean += q;
        if (!v.empty()) mean /= static_cast<double>(v.size());
        dev = 0;
        for (double q : v) dev = std::max(dev, std::abs(q - mean));
    };
    finish(rep.I1, rep.I1_mean, rep.I1_max_dev);
    finish(rep.I2, rep.I2_mean, rep.I2_max_dev);
    return rep;
}

// ---------------------------------------------------------------------------
// Sensitivity probe
// ---------------------------------------------------------------------------

/// Multiplies the density by (1 + eps x_1), leaving everything else in place:
/// a deliberately broken solution that residual checks must flag. Guards the
/// suite against vacuous passes.
inline FluidSolution corrupt_density(const FluidSolution& sol, double eps) {
    FluidSolution bad = sol;
    auto base = sol.density;
    bad.density = [base, eps](double t, const Vec& x) { return base(t, x) * (1.0 + eps * x[0]); };
    bad.notes.push_back("corrupted density (sensitivity probe)");
    return bad;
}

} // namespace cfl
