// Acceptance suite: every shipped guarantee of the library run end to end at
// its stated tolerance, one PASS/FAIL line per criterion. Exit code = number
// of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cfl/algebra.hpp"
#include "cfl/catalog.hpp"
#include "cfl/csv.hpp"
#include "cfl/kinematics.hpp"
#include "cfl/residual.hpp"
#include "cfl/transform.hpp"

using namespace cfl;

namespace {

EllParameter ell(const char* s) { return EllParameter::validate(Rational::parse(s)); }

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

GridSpec reference_grid(int d, std::uint64_t seed = 1) {
    GridSpec g = GridSpec::parse("t=2:6:50,x=-10:10:100", d);
    g.max_points = 10000;
    g.seed = seed;
    return g;
}

} // namespace

int main() {
    // 1. Exact structure relations and Jacobi identity.
    criterion(1, "algebra exactness (conformal Galilei + Lifshitz, exact rationals)",
              [](std::string& detail) {
        bool ok = true;
        for (const char* l : {"1/2", "1", "3/2", "2", "5/2", "9/2"}) {
            for (int d : {1, 2, 3}) {
                auto rep = verify_gca_structure(ell(l), d);
                if (!rep.all_match()) {
                    detail = std::string("gca relations failed at ell=") + l;
                    ok = false;
                }
                auto gens = all_generators(AlgebraFamily::GalileiConformal, Rational::parse(l), d);
                for (size_t i = 0; i < gens.size() && ok; ++i)
                    for (size_t j = i + 1; j < gens.size() && ok; ++j)
                        for (size_t k = j + 1; k < gens.size() && ok; ++k)
                            if (!jacobiator(gens[i], gens[j], gens[k]).is_zero()) {
                                detail = std::string("jacobi failed at ell=") + l;
                                ok = false;
                            }
            }
        }
        for (const char* z : {"3/5", "1", "2", "7/3"}) {
            for (int d : {1, 2, 3}) {
                auto rep = verify_lifshitz_structure(Rational::parse(z), d);
                if (!rep.all_match()) {
                    detail = std::string("lifshitz relations failed at z=") + z;
                    ok = false;
                }
                auto gens = all_generators(AlgebraFamily::Lifshitz, Rational::parse(z), d);
                for (size_t i = 0; i < gens.size() && ok; ++i)
                    for (size_t j = i + 1; j < gens.size() && ok; ++j)
                        for (size_t k = j + 1; k < gens.size() && ok; ++k)
                            if (!jacobiator(gens[i], gens[j], gens[k]).is_zero()) {
                                detail = std::string("lifshitz jacobi failed at z=") + z;
                                ok = false;
                            }
            }
        }
        return ok;
    });

    // 2. Scaling-solution residuals at the reference grid.
    criterion(2, "scaling-flow continuity + Euler residuals <= 1e-6 relative",
              [](std::string& detail) {
        bool ok = true;
        double worst = 0.0;
        for (const char* l : {"1/2", "1", "2", "5/2", "9/2", "13/2"}) {
            for (int d : {1, 2, 3}) {
                auto sol = gca_scaling_solution({ell(l), d, 0.5, 0.1});
                auto grid = reference_grid(d);
                auto cont = continuity_residual(sol, grid);
                auto eul = euler_residual_galilei(sol, grid);
                worst = std::max({worst, cont.max_rel, eul.max_rel});
                if (cont.max_rel > 1e-6 || eul.max_rel > 1e-6) {
                    detail = std::string("ell=") + l + " d=" + std::to_string(d) +
                             " cont=" + format_double(cont.max_rel) +
                             " euler=" + format_double(eul.max_rel);
                    ok = false;
                }
            }
        }
        if (ok) detail = "worst max_rel = " + format_double(worst);
        return ok;
    });

    // 3. Lifshitz z = 1 vs Schroedinger ell = 1/2, pointwise.
    criterion(3, "Lifshitz(z=1) == GCA(ell=1/2) pointwise <= 1e-12", [](std::string& detail) {
        double worst = 0.0;
        for (int d : {1, 2, 3}) {
            auto lif = lifshitz_scaling_solution({Rational(1), d, 0.5, 0.1});
            auto gca = gca_scaling_solution({ell("1/2"), d, 0.5, 0.1});
            GridSpec g = GridSpec::parse(
                d == 1 ? "t=1:6:10,x=-8:8:100"
                       : (d == 2 ? "t=1:6:10,x=-8:8:10" : "t=1:6:8,x=-8:8:5"),
                d);
            auto pts = sample_grid(g, nullptr);
            for (const auto& p : pts) {
                double rl = lif.rho(p.t, p.x), rg = gca.rho(p.t, p.x);
                worst = std::max(worst, std::abs(rl - rg) / std::max(1.0, std::abs(rg)));
                auto vl = lif.v(p.t, p.x), vg = gca.v(p.t, p.x);
                for (int i = 0; i < d; ++i)
                    worst = std::max(worst,
                                     std::abs(vl[i] - vg[i]) / std::max(1.0, std::abs(vg[i])));
            }
        }
        detail = "worst deviation = " + format_double(worst);
        return worst <= 1e-12;
    });

    // 4. SL(2,R) image of the scaling flow vs the printed closed form.
    criterion(4, "special-conformal image equals closed form <= 1e-12", [](std::string& detail) {
        double worst = 0.0;
        for (const char* l : {"1/2", "1"}) {
            for (int d : {1, 2}) {
                for (double gamma : {0.1, 0.3, 1.0}) {
                    GcaScalingParams p{ell(l), d, 0.5, 0.1};
                    auto img =
                        apply_sl2(Sl2Element::special_conformal(gamma), gca_scaling_solution(p));
                    auto closed = conformal_deformed_solution(p, gamma);
                    for (double t : linspace(2.0, 6.0, 7)) {
                        for (double xv : linspace(-5.0, 5.0, 9)) {
                            Vec x{xv, d > 1 ? 1.3 : 0.0, 0.0};
                            worst = std::max(worst, std::abs(img.rho(t, x) - closed.rho(t, x)) /
                                                        std::max(1.0, closed.rho(t, x)));
                            for (int i = 0; i < d; ++i)
                                worst = std::max(
                                    worst, std::abs(img.v(t, x)[i] - closed.v(t, x)[i]) /
                                               std::max(1.0, std::abs(closed.v(t, x)[i])));
                        }
                    }
                }
            }
        }
        detail = "worst deviation = " + format_double(worst);
        return worst <= 1e-12;
    });

    // 5. Covariance under randomized group elements.
    criterion(5, "randomized SL(2,R) + acceleration covariance within 10x",
              [](std::string& detail) {
        std::mt19937 rng(20240817);
        std::uniform_real_distribution<double> eps(-0.05, 0.05);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        auto sl2_base = gca_scaling_solution({ell("5/2"), 1, 0.5, 0.1});
        auto sl2_grid = GridSpec::parse("t=2:6:6,x=-8:8:10", 1);
        double worst_ratio = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            double al = 1.0 + eps(rng), be = eps(rng), ga = eps(rng);
            Sl2Element g{al, be, ga, (1.0 + be * ga) / al};
            auto rep = covariance_suite(g, sl2_base, sl2_grid);
            for (const auto& e : rep.entries) worst_ratio = std::max(worst_ratio, e.ratio);
            if (!rep.pass) {
                detail = "sl2 trial " + std::to_string(trial) + " exceeded 10x";
                return false;
            }
        }
        auto acc_base = gca_scaling_solution({ell("1"), 2, 0.5, 0.1});
        auto acc_grid = GridSpec::parse("t=2:5:5,x=-5:5:6", 2);
        for (int trial = 0; trial < 20; ++trial) {
            AccelerationElement g;
            g.a = {Vec{amp(rng), amp(rng), 0}, Vec{amp(rng), amp(rng), 0},
                   Vec{amp(rng), amp(rng), 0}};
            auto rep = covariance_suite(g, acc_base, acc_grid);
            for (const auto& e : rep.entries) worst_ratio = std::max(worst_ratio, e.ratio);
            if (!rep.pass) {
                detail = "acceleration trial " + std::to_string(trial) + " exceeded 10x";
                return false;
            }
        }
        detail = "worst norm ratio = " + format_double(worst_ratio);
        return true;
    });

    // 6. Admissibility gates.
    criterion(6, "constructors gate ell and z admissibility", [](std::string& detail) {
        auto rejects = [](const char* l) {
            try {
                gca_scaling_solution({ell(l), 1, 0.5, 0.1});
                return false;
            } catch (const error& e) {
                return e.code() == errc::inadmissible_ell;
            }
        };
        auto accepts = [](const char* l) {
            gca_scaling_solution({ell(l), 1, 0.5, 0.1});
            return true;
        };
        for (const char* l : {"3/2", "7/2", "11/2"})
            if (!rejects(l)) {
                detail = std::string("ell=") + l + " was not rejected";
                return false;
            }
        for (const char* l : {"1/2", "5/2", "9/2", "13/2"})
            if (!accepts(l)) return false;
        for (const char* z : {"1/2", "2/5"}) {
            try {
                lifshitz_scaling_solution({Rational::parse(z), 2, 0.5, 0.1});
                detail = std::string("z=") + z + " was not rejected";
                return false;
            } catch (const error& e) {
                if (e.code() != errc::invalid_dynamical_exponent) return false;
            }
        }
        return true;
    });

    // 7. Quartic-family first integrals over randomized parameters.
    criterion(7, "quartic first integrals constant within 1e-10 (5 random sets)",
              [](std::string& detail) {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> uc(-2.0, 2.0);
        std::uniform_int_distribution<int> us(0, 1);
        int done = 0;
        double worst = 0.0;
        while (done < 5) {
            Quartic1dParams p;
            p.c1 = uc(rng);
            p.c2 = uc(rng);
            if (std::abs(p.c1 - p.c2) < 0.2) continue;
            p.a = 0.2 + 0.4 * std::abs(uc(rng));
            p.sign1 = us(rng) ? 1 : -1;
            p.sign2 = us(rng) ? 1 : -1;
            FluidSolution sol;
            try {
                p.positive_x = true;
                sol = quartic_1d_solution(p);
            } catch (const error&) {
                try {
                    p.positive_x = false;
                    sol = quartic_1d_solution(p);
                } catch (const error&) {
                    continue; // degenerate draw
                }
            }
            double y_min = sol.params["y_min"].get<double>();
            double y_lo = std::max(y_min * 1.01 + 1e-3, 1e-3);
            auto rep = ode_first_integral_check(sol, linspace(y_lo, y_lo + 60.0, 1000));
            double dev = std::max(rep.I1_max_dev / std::max(1.0, std::abs(rep.I1_mean)),
                                  rep.I2_max_dev / std::max(1.0, std::abs(rep.I2_mean)));
            worst = std::max(worst, dev);
            if (dev > 1e-10) {
                detail = "set " + std::to_string(done) + " deviation " + format_double(dev);
                return false;
            }
            ++done;
        }
        detail = "worst relative deviation = " + format_double(worst);
        return true;
    });

    // 8. Deformed-flow orbits against the quadratic closed form.
    criterion(8, "ten traced orbits match the closed form within 1e-6", [](std::string& detail) {
        auto base = gca_scaling_solution({ell("1"), 2, 0.5, 0.1});
        const double s3 = std::sqrt(3.0) / 2.0;
        AccelerationElement g;
        g.a = {Vec{0, 1, 0}, Vec{s3, -0.5, 0}, Vec{-s3, -0.5, 0}};
        auto img = apply_acceleration(g, base);
        const double t0 = 0.05;
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            double b2 = 0.1 + 0.1 * k;
            Vec seed{0.1 * t0 - s3 * t0 * t0, 1.0 + b2 * t0 - 0.5 * t0 * t0, 0};
            auto orb = trace_orbit(img, seed, t0, 1.0, 1e-3);
            if (!orb.complete) {
                detail = "orbit " + std::to_string(k) + " incomplete";
                return false;
            }
            for (const auto& [t, x] : orb.samples) {
                worst = std::max(worst, std::abs(x[0] - (0.1 * t - s3 * t * t)));
                worst = std::max(worst, std::abs(x[1] - (b2 * t + 1.0 - 0.5 * t * t)));
            }
        }
        detail = "worst orbit deviation = " + format_double(worst);
        return worst <= 1e-6;
    });

    // 9. Kinematic decomposition of the scaling flows.
    criterion(9, "vorticity/shear vanish; expansion = d*ell/t and d/(2zt)",
              [](std::string& detail) {
        double worst_tensor = 0.0, worst_exp = 0.0;
        for (const char* l : {"1/2", "5/2"}) {
            for (int d : {1, 2, 3}) {
                auto sol = gca_scaling_solution({ell(l), d, 0.5, 0.1});
                double t = 2.0;
                auto k = kinematic_decomposition(sol, t,
                                                 {0.7, d > 1 ? -1.1 : 0.0, d > 2 ? 0.4 : 0.0});
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        worst_tensor = std::max({worst_tensor, std::abs(k.vorticity[i][j]),
                                                 std::abs(k.shear[i][j])});
                worst_exp =
                    std::max(worst_exp, std::abs(k.expansion - d * ell(l).to_double() / t));
            }
        }
        for (const char* z : {"3/5", "2"}) {
            for (int d : {1, 2, 3}) {
                auto sol = lifshitz_scaling_solution({Rational::parse(z), d, 0.5, 0.1});
                double t = 3.0;
                auto k = kinematic_decomposition(sol, t,
                                                 {1.0, d > 1 ? 0.5 : 0.0, d > 2 ? -0.8 : 0.0});
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        worst_tensor = std::max({worst_tensor, std::abs(k.vorticity[i][j]),
                                                 std::abs(k.shear[i][j])});
                worst_exp = std::max(
                    worst_exp,
                    std::abs(k.expansion - d / (2.0 * Rational::parse(z).to_double() * t)));
            }
        }
        detail =
            "tensors " + format_double(worst_tensor) + ", expansion " + format_double(worst_exp);
        return worst_tensor <= 1e-8 && worst_exp <= 1e-7;
    });

    // 10. Unit-disk mass curves cross exactly once.
    criterion(10, "disk-mass curves (ell = 1/2 vs 5/2) cross exactly once on [0.8, 3]",
              [](std::string& detail) {
        auto s_low = gca_scaling_solution({ell("1/2"), 2, 0.5, 0.1});
        auto s_high = gca_scaling_solution({ell("5/2"), 2, 0.5, 0.1});
        auto diff = [&](double t) {
            return mass_in_ball(s_high, {0, 0, 0}, 1.0, t, {96}) -
                   mass_in_ball(s_low, {0, 0, 0}, 1.0, t, {96});
        };
        int sign_changes = 0;
        double cross_at = 0.0;
        double first = diff(0.8);
        double prev = first;
        for (int i = 1; i <= 25; ++i) {
            double t = 0.8 + (3.0 - 0.8) * i / 25.0;
            double cur = diff(t);
            if ((prev > 0) != (cur > 0)) {
                ++sign_changes;
                double lo = 0.8 + (3.0 - 0.8) * (i - 1) / 25.0, hi = t;
                for (int b = 0; b < 30; ++b) {
                    double mid = 0.5 * (lo + hi);
                    ((diff(mid) > 0) == (prev > 0) ? lo : hi) = mid;
                }
                cross_at = 0.5 * (lo + hi);
            }
            prev = cur;
        }
        detail = "sign changes = " + std::to_string(sign_changes) +
                 (sign_changes == 1 ? ", crossing near t = " + format_double(cross_at) : "");
        return first > 0 && prev < 0 && sign_changes == 1;
    });

    // 11. Viscous solutions.
    criterion(11,
              "viscous: integer residual <= 1e-8; root residual <= 1e-12; inviscid limit <= 1e-10",
              [](std::string& detail) {
        for (const char* l : {"1", "2"}) {
            auto sol = viscous_solution({ell(l), 2, 0.5, 0.1, 0.3, 0.2});
            auto grid = GridSpec::parse("t=2:6:8,x=-5:5:10", 2);
            auto rep = euler_residual_viscous(sol, grid);
            if (rep.max_abs > 1e-8) {
                detail =
                    std::string("integer ell=") + l + " residual " + format_double(rep.max_abs);
                return false;
            }
        }
        auto half = viscous_solution({ell("1/2"), 1, 0.5, 0.75, 0.0, 0.1});
        double worst_root = 0.0;
        for (double t : linspace(0.5, 5.0, 12))
            for (double x : linspace(-6.0, 6.0, 13))
                worst_root =
                    std::max(worst_root, std::abs(viscous_root_residual(half, t, {x, 0, 0})));
        if (worst_root > 1e-12) {
            detail = "root residual " + format_double(worst_root);
            return false;
        }
        auto grid1 = GridSpec::parse("t=1:3:8,x=-3:3:12", 1);
        auto rep_half = euler_residual_viscous(half, grid1);
        if (rep_half.max_rel > 1e-5) {
            detail = "half-integer residual " + format_double(rep_half.max_rel);
            return false;
        }
        double a = 0.5, c_inv = 0.1, elld = 0.5;
        auto tiny = viscous_solution({ell("1/2"), 1, a, a * (elld + 1.0) * c_inv, 0.0, 1e-13});
        auto perfect = gca_scaling_solution({ell("1/2"), 1, a, c_inv});
        double worst_lim = 0.0;
        for (double t : linspace(0.5, 4.0, 8))
            for (double x : linspace(-5.0, 5.0, 9))
                worst_lim = std::max(
                    worst_lim, std::abs(tiny.rho(t, {x, 0, 0}) - perfect.rho(t, {x, 0, 0})));
        detail = "root " + format_double(worst_root) + ", limit " + format_double(worst_lim);
        return worst_lim <= 1e-10;
    });

    // 12. Corruption sensitivity: no family passes vacuously.
    criterion(12, "1e-3 density corruption raises continuity residuals above 1e-4",
              [](std::string& detail) {
        std::vector<std::pair<std::string, FluidSolution>> sols;
        sols.emplace_back("gca-scaling", gca_scaling_solution({ell("5/2"), 1, 0.5, 0.1}));
        sols.emplace_back("gca-quartic-1d", quartic_1d_solution({}));
        sols.emplace_back("gca-continuity-branch-1d",
                          continuity_branch_1d_solution(0.5, 1.0 / 3.0, +1, true));
        sols.emplace_back("gca-acceleration",
                          acceleration_solution({ell("1/2"), 1, 0.3, 0.7, 0.0}));
        sols.emplace_back("gca-conformal-deformed",
                          conformal_deformed_solution({ell("1/2"), 1, 0.5, 0.1}, 0.3));
        {
            auto base = gca_scaling_solution({ell("1"), 2, 0.5, 0.1});
            AccelerationElement g;
            g.a = {Vec{0.3, 0.2, 0}, Vec{-0.1, 0.4, 0}, Vec{0.2, -0.3, 0}};
            sols.emplace_back("gca-acceleration-deformed", apply_acceleration(g, base));
        }
        sols.emplace_back("lifshitz", lifshitz_scaling_solution({Rational(3, 5), 2, 0.5, 0.1}));
        sols.emplace_back("viscous-gca-integer",
                          viscous_solution({ell("1"), 2, 0.5, 0.1, 0.3, 0.2}));
        sols.emplace_back("viscous-gca-half-integer",
                          viscous_solution({ell("1/2"), 1, 0.5, 0.75, 0.0, 0.1}));
        double weakest = 1e300;
        for (auto& [name, sol] : sols) {
            GridSpec grid = sol.dim == 1 ? GridSpec::parse("t=2:5:6,x=1:6:10", 1)
                                         : GridSpec::parse("t=2:5:6,x=1:6:6", sol.dim);
            auto rep = continuity_residual(corrupt_density(sol, 1e-3), grid);
            weakest = std::min(weakest, rep.max_rel);
            if (rep.max_rel <= 1e-4) {
                detail = name + " only reached " + format_double(rep.max_rel);
                return false;
            }
        }
        detail = "weakest detector response = " + format_double(weakest);
        return true;
    });

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures;
}
