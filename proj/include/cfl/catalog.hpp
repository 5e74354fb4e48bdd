#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "cfl/core.hpp"
#include "cfl/material.hpp"

namespace cfl {

namespace detail {

inline double pow_int(double base, long long e) {
    if (e < 0) return 1.0 / pow_int(base, -e);
    double r = 1.0, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline void require(bool ok, errc code, const std::string& msg) {
    if (!ok) throw error(code, msg);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scaling family (Bjorken-type flow v_i = ell x_i / t)
// ---------------------------------------------------------------------------

struct GcaScalingParams {
    EllParameter ell;
    int d = 1;
    double a = 0.5;
    double c = 0.1;
    double t0 = 0.0;
};

/// v_i = ell x_i/tau, rho = (c/tau - P |x|^2 / (2a(1+ell d) tau^(2ell+1)))^(ell d)
/// with tau = t + t0 and P the ell-product. Integer ell drops the quadratic
/// term exactly (P = 0) and the fluid is homogeneous.
inline FluidSolution gca_scaling_solution(const GcaScalingParams& p) {
    detail::require(p.d >= 1 && p.d <= max_dim, errc::invalid_argument, "d must be 1..3");
    detail::require(p.ell.is_admissible(), errc::inadmissible_ell,
                    "ell = " + p.ell.str() + " is not integer or (1+4k)/2");
    detail::require(p.a > 0, errc::non_positive, "a must be > 0");
    detail::require(p.c > 0, errc::non_positive, "c must be > 0");

    const Rational P = ell_product(p.ell);
    const Rational elld = p.ell.value() * Rational(p.d);
    const double beta = -P.to_double() / (2.0 * p.a * (1.0 + elld.to_double()));
    // admissible ell means P <= 0, so the density argument stays positive
    detail::require(beta >= 0.0, errc::non_positive_density_domain,
                    "density argument not positive definite");
    const double exponent = elld.to_double();
    const long long pow_tau = p.ell.doubled() + 1;
    const double ell_d = p.ell.to_double();
    const double t0 = p.t0;
    const double c = p.c;
    const int dim = p.d;

    FluidSolution sol;
    sol.family = Family::GcaScaling;
    sol.dim = p.d;
    sol.ell = p.ell;
    sol.eos = EquationOfState::galilei(p.ell, p.d, p.a);
    sol.domain = SpacetimeDomain::all_space(p.d, -p.t0);
    sol.params = {{"ell", p.ell.str()}, {"d", p.d}, {"a", p.a}, {"c", p.c}, {"t0", p.t0}};
    if (p.ell.is_integer()) {
        // homogeneous fluid: the quadratic term vanishes exactly and the
        // integration constant multiplies the density directly, rho = c/tau^(ld)
        const long long ld_int = elld.num();
        sol.density = [c, ld_int, t0](double t, const Vec&) {
            double tau = t + t0;
            if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
            return c / detail::pow_int(tau, ld_int);
        };
    } else {
        sol.density = [c, beta, exponent, pow_tau, t0, dim](double t, const Vec& x) {
            double tau = t + t0;
            if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
            double arg = c / tau + beta * norm2(x, dim) / detail::pow_int(tau, pow_tau);
            if (!(arg > 0)) throw error(errc::non_positive_density_domain, "density argument <= 0");
            return std::pow(arg, exponent);
        };
    }
    sol.velocity = [ell_d, t0, dim](double t, const Vec& x) {
        double tau = t + t0;
        Vec v{};
        for (int i = 0; i < dim; ++i) v[i] = ell_d * x[i] / tau;
        return v;
    };
    sol.scaling = ScalingFlow{p.ell.value(), p.t0};
    AffineFlow af;
    af.t_offset = p.t0;
    af.A = LaurentPoly::monomial(p.ell.value(), -1);
    sol.affine = af;
    return sol;
}

// ---------------------------------------------------------------------------
// Quartic family (d = 1, ell = 1/2, general scale-invariant branch)
// ---------------------------------------------------------------------------

struct Quartic1dParams {
    double c1 = 1.0;
    double c2 = 0.0;
    double a = 1.0 / 3.0;
    int sign1 = +1;
    int sign2 = +1;
    bool positive_x = true; // half-line x > 0 (false: x < 0)
    double t0 = 0.0;
};

namespace detail {

/// Similarity profile of the quartic branch: y = x^2/tau,
/// u(y) = y/2 + s1/2 sqrt((y/2+c1)^2 - c1^2) + s2/2 sqrt((y/2+c2)^2 - c2^2).
struct QuarticProfile {
    double c1, c2, k; // k = (c1-c2)/(4 sqrt(3a))
    int s1, s2;
    double y_min;     // radicals real for y > y_min

    double radicand(double c, double y) const { return (0.5 * y + c) * (0.5 * y + c) - c * c; }

    double separation(double y) const { // u - y/2
        return 0.5 * s1 * std::sqrt(std::max(0.0, radicand(c1, y))) +
               0.5 * s2 * std::sqrt(std::max(0.0, radicand(c2, y)));
    }

    double u(double y) const { return 0.5 * y + separation(y); }
    double w(double y) const { return k * y / separation(y); }
};

} // namespace detail

/// General 1+1 dimensional scale-invariant solution for ell = 1/2: the Euler
/// equation reduces to a quartic algebraic equation for u(y); the continuity
/// equation then fixes w(y) ~ y/(u - y/2). Fields: v = u/x, rho = w/x.
/// Sign choices, integration constants and the half-line must combine to a
/// positive density; the positivity region is computed numerically.
inline FluidSolution quartic_1d_solution(const Quartic1dParams& p) {
    detail::require(p.a > 0, errc::non_positive, "a must be > 0");
    detail::require(p.sign1 == 1 || p.sign1 == -1, errc::invalid_argument, "sign1 must be +-1");
    detail::require(p.sign2 == 1 || p.sign2 == -1, errc::invalid_argument, "sign2 must be +-1");
    if (p.c1 == p.c2) {
        if (p.sign1 != p.sign2)
            throw error(errc::branch_collision, "u == y/2 identically; w undefined");
        throw error(errc::empty_positivity_domain, "c1 == c2 makes rho vanish identically");
    }

    detail::QuarticProfile prof;
    prof.c1 = p.c1;
    prof.c2 = p.c2;
    prof.s1 = p.sign1;
    prof.s2 = p.sign2;
    prof.k = (p.c1 - p.c2) / (4.0 * std::sqrt(3.0 * p.a));
    prof.y_min = std::max({0.0, -4.0 * p.c1, -4.0 * p.c2});

    // Scan the reality region for the sign of w; the separation u - y/2 never
    // vanishes inside, so the sign is uniform, but we verify numerically.
    const double y_lo = prof.y_min + std::max(1e-12, 1e-9 * std::abs(prof.y_min));
    int sign_w = 0;
    for (int i = 0; i <= 2000; ++i) {
        double y = y_lo * std::pow(1e6 / y_lo, i / 2000.0);
        double w = prof.w(y);
        if (!std::isfinite(w) || w == 0.0) continue;
        int s = w > 0 ? 1 : -1;
        if (sign_w == 0) sign_w = s;
        else if (sign_w != s)
            throw error(errc::empty_positivity_domain, "density changes sign inside region");
    }
    detail::require(sign_w != 0, errc::empty_positivity_domain, "w vanishes on scan");
    const bool want_positive_w = p.positive_x;
    if ((sign_w > 0) != want_positive_w)
        throw error(errc::empty_positivity_domain,
                    "sign choice and half-line give rho <= 0 everywhere");

    const double t0 = p.t0;
    const bool pos_x = p.positive_x;
    const double y_min = prof.y_min;
    auto in_domain = [pos_x, y_min, t0](double t, double x) {
        double tau = t + t0;
        if (!(tau > 0)) return false;
        if (pos_x ? !(x > 0) : !(x < 0)) return false;
        return x * x / tau > y_min;
    };

    FluidSolution sol;
    sol.family = Family::GcaQuartic1d;
    sol.dim = 1;
    sol.ell = EllParameter::validate(Rational(1, 2));
    sol.eos = EquationOfState::galilei(*sol.ell, 1, p.a);
    sol.domain = SpacetimeDomain::all_space(1, -p.t0);
    if (p.positive_x) sol.domain.x_ranges[0] = {0.0, std::numeric_limits<double>::infinity()};
    else sol.domain.x_ranges[0] = {-std::numeric_limits<double>::infinity(), 0.0};
    sol.domain.excluded.push_back(
        {"similarity variable y = x^2/tau outside positivity region",
         [in_domain](double t, const Vec& x) { return !in_domain(t, x[0]); }});
    sol.params = {{"c1", p.c1},       {"c2", p.c2},
                  {"a", p.a},         {"sign1", p.sign1},
                  {"sign2", p.sign2}, {"half_line", p.positive_x ? "x>0" : "x<0"},
                  {"t0", p.t0},       {"y_min", prof.y_min}};
    sol.density = [prof, in_domain, t0](double t, const Vec& x) {
        if (!in_domain(t, x[0])) throw error(errc::domain_exceeded, "outside positivity domain");
        double rho = prof.w(x[0] * x[0] / (t + t0)) / x[0];
        if (!(rho > 0)) throw error(errc::non_positive_density_domain, "rho <= 0");
        return rho;
    };
    sol.velocity = [prof, in_domain, t0](double t, const Vec& x) {
        if (!in_domain(t, x[0])) throw error(errc::domain_exceeded, "outside positivity domain");
        return Vec{prof.u(x[0] * x[0] / (t + t0)) / x[0], 0, 0};
    };
    return sol;
}

// ---------------------------------------------------------------------------
// Continuity branch (d = 1, ell = 1/2, u = y/2)
// ---------------------------------------------------------------------------

/// The alternative resolution of the reduced system: the continuity equation
/// fixes u = y/2 (so v = x/(2 tau)) and the Euler equation fixes
/// w = +- (1/sqrt(3a)) sqrt((y/2+c)^2 - c^2).
inline FluidSolution continuity_branch_1d_solution(double c, double a, int sign, bool positive_x,
                                                   double t0 = 0.0) {
    detail::require(a > 0, errc::non_positive, "a must be > 0");
    detail::require(sign == 1 || sign == -1, errc::invalid_argument, "sign must be +-1");
    if ((sign > 0) != positive_x)
        throw error(errc::empty_positivity_domain,
                    "sign choice and half-line give rho <= 0 everywhere");
    const double y_min = std::max(0.0, -4.0 * c);
    const double norm = 1.0 / std::sqrt(3.0 * a);

    auto in_domain = [positive_x, y_min, t0](double t, double x) {
        double tau = t + t0;
        if (!(tau > 0)) return false;
        if (positive_x ? !(x > 0) : !(x < 0)) return false;
        return x * x / tau > y_min;
    };

    FluidSolution sol;
    sol.family = Family::GcaContinuityBranch1d;
    sol.dim = 1;
    sol.ell = EllParameter::validate(Rational(1, 2));
    sol.eos = EquationOfState::galilei(*sol.ell, 1, a);
    sol.domain = SpacetimeDomain::all_space(1, -t0);
    if (positive_x) sol.domain.x_ranges[0] = {0.0, std::numeric_limits<double>::infinity()};
    else sol.domain.x_ranges[0] = {-std::numeric_limits<double>::infinity(), 0.0};
    sol.domain.excluded.push_back(
        {"similarity variable y = x^2/tau below radical boundary",
         [in_domain](double t, const Vec& x) { return !in_domain(t, x[0]); }});
    sol.params = {{"c", c}, {"a", a}, {"sign", sign},
                  {"half_line", positive_x ? "x>0" : "x<0"}, {"t0", t0}, {"y_min", y_min}};
    sol.density = [c, sign, norm, in_domain, t0](double t, const Vec& x) {
        if (!in_domain(t, x[0])) throw error(errc::domain_exceeded, "outside positivity domain");
        double y = x[0] * x[0] / (t + t0);
        double rad = (0.5 * y + c) * (0.5 * y + c) - c * c;
        double rho = sign * norm * std::sqrt(std::max(0.0, rad)) / x[0];
        if (!(rho > 0)) throw error(errc::non_positive_density_domain, "rho <= 0");
        return rho;
    };
    sol.velocity = [t0](double t, const Vec& x) { return Vec{x[0] / (2.0 * (t + t0)), 0, 0}; };
    sol.scaling = ScalingFlow{Rational(1, 2), t0};
    AffineFlow af;
    af.t_offset = t0;
    af.A = LaurentPoly::monomial(Rational(1, 2), -1);
    sol.affine = af;
    return sol;
}

// ---------------------------------------------------------------------------
// Acceleration-subgroup family (d = 1)
// ---------------------------------------------------------------------------

struct AccelerationFamilyParams {
    EllParameter ell;
    int n = 0;
    double c = 1.0;
    double c_minus1 = 0.0;
    double c_0 = 0.0;
    double a = 1.0;
    double t0 = 0.0;
};

/// Constraint structure of the bounded acceleration-family branch
/// v = (n x + c_{-1} + c_0 tau)/tau: which constants survive D^(2l) v = 0.
struct AccelConstraint {
    bool c_minus1_free = false;
    bool c_0_free = false;
    bool coupled = false; // c_{-1} = ratio * c_0
    Rational ratio;
};

/// Solves the linear constraint D^(2l) v = 0 over the Laurent coefficients of
/// the x-free part, exactly. The x-coefficient n(n-1)...(n-2l) vanishes for
/// every n in 0..2l, so only (c_{-1}, c_0) are constrained.
inline AccelConstraint acceleration_constraints(const EllParameter& ell, int n) {
    if (n < 0 || n > ell.doubled())
        throw error(errc::out_of_range_acceleration_index,
                    "n = " + std::to_string(n) + " outside 0..2*ell");
    const int k = static_cast<int>(ell.doubled());

    AffineFlow advect;
    advect.A = LaurentPoly::monomial(Rational(n), -1);

    // G_k is jointly linear in the x-free part B (initial value and advective
    // product), so iterate each basis element self-advected.
    auto basis_iterate = [&](const LaurentPoly& g0) {
        AffineFlow basis;
        basis.A = advect.A;
        basis.B[0] = g0;
        return material_derivative_affine(basis, k).B[0];
    };
    LaurentPoly g1 = basis_iterate(LaurentPoly::monomial(Rational(1), -1)); // c_{-1} column
    LaurentPoly g0 = basis_iterate(LaurentPoly(Rational(1)));               // c_0 column

    AccelConstraint out;
    if (g1.is_zero() && g0.is_zero()) {
        out.c_minus1_free = out.c_0_free = true;
        return out;
    }
    if (g1.is_zero()) {
        out.c_minus1_free = true; // c_0 forced to 0
        return out;
    }
    if (g0.is_zero()) {
        out.c_0_free = true; // c_{-1} forced to 0
        return out;
    }
    // both columns nonzero: proportional -> one-parameter family, else trivial
    Rational lambda;
    bool proportional = true;
    bool have_lambda = false;
    for (const auto& [pw, cg1] : g1.terms()) {
        Rational cg0 = g0.coeff(pw);
        if (!have_lambda) {
            lambda = cg0 / cg1;
            have_lambda = true;
        } else if (cg0 != lambda * cg1) {
            proportional = false;
            break;
        }
    }
    if (proportional) {
        for (const auto& [pw, cg0] : g0.terms())
            if (g1.coeff(pw).is_zero() && !cg0.is_zero()) proportional = false;
    }
    if (proportional) {
        out.coupled = true;
        out.ratio = -lambda; // c_{-1} = -lambda c_0
    }
    return out;
}

/// rho = c/tau^n, v = (n x + c_{-1} + c_0 tau)/tau with the constants fixed by
/// the Euler equation through the exact affine recursion. Runaway branches
/// (positive powers of t in the velocity) are never constructed. Free
/// constants keep the requested values; forced ones must be zero (or satisfy
/// the coupling), otherwise NoBoundedSolution.
inline FluidSolution acceleration_solution(const AccelerationFamilyParams& p) {
    detail::require(p.c > 0, errc::non_positive, "c must be > 0");
    detail::require(p.a > 0, errc::non_positive, "a must be > 0");
    auto cons = acceleration_constraints(p.ell, p.n);

    auto near_zero = [](double v) { return std::abs(v) <= 1e-14; };
    bool ok;
    if (cons.c_minus1_free && cons.c_0_free) ok = true;
    else if (cons.c_minus1_free) ok = near_zero(p.c_0);
    else if (cons.c_0_free) ok = near_zero(p.c_minus1);
    else if (cons.coupled) ok = near_zero(p.c_minus1 - cons.ratio.to_double() * p.c_0);
    else ok = near_zero(p.c_minus1) && near_zero(p.c_0);
    if (!ok)
        throw error(errc::no_bounded_solution,
                    "requested constants violate the D^(2l) v = 0 constraint for ell = " +
                        p.ell.str() + ", n = " + std::to_string(p.n));

    const double t0 = p.t0;
    const double c = p.c;
    const int n = p.n;
    const double cm1 = p.c_minus1, c0 = p.c_0;

    FluidSolution sol;
    sol.family = Family::GcaAcceleration;
    sol.dim = 1;
    sol.ell = p.ell;
    sol.eos = EquationOfState::galilei(p.ell, 1, p.a);
    sol.domain = SpacetimeDomain::all_space(1, -p.t0);
    sol.params = {{"ell", p.ell.str()},
                  {"n", p.n},
                  {"c", p.c},
                  {"c_minus1", p.c_minus1},
                  {"c_0", p.c_0},
                  {"a", p.a},
                  {"t0", p.t0},
                  {"c_minus1_free", cons.c_minus1_free || cons.coupled},
                  {"c_0_free", cons.c_0_free || cons.coupled}};
    sol.density = [c, n, t0](double t, const Vec&) {
        double tau = t + t0;
        if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
        return c / detail::pow_int(tau, n);
    };
    sol.velocity = [n, cm1, c0, t0](double t, const Vec& x) {
        double tau = t + t0;
        return Vec{(n * x[0] + cm1 + c0 * tau) / tau, 0, 0};
    };
    AffineFlow af;
    af.t_offset = p.t0;
    af.A = LaurentPoly::monomial(Rational(n), -1);
    // double constants enter the Laurent ring via small-denominator rationals
    // only when exact; otherwise keep the affine tag off.
    auto to_rational = [](double v) -> std::optional<Rational> {
        for (long long den : {1LL, 2LL, 3LL, 4LL, 5LL, 8LL, 10LL, 16LL, 100LL, 1000LL}) {
            double scaled = v * static_cast<double>(den);
            if (std::abs(scaled - std::llround(scaled)) < 1e-12 &&
                std::abs(scaled) < 9e15)
                return Rational(std::llround(scaled), den);
        }
        return std::nullopt;
    };
    auto rm1 = to_rational(p.c_minus1);
    auto r0 = to_rational(p.c_0);
    if (rm1 && r0) {
        af.B[0] = LaurentPoly::monomial(*rm1, -1) + LaurentPoly(*r0);
        sol.affine = af;
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Lifshitz anisotropic-scaling family
// ---------------------------------------------------------------------------

struct LifshitzParams {
    Rational z{1};
    int d = 1;
    double a = 0.5;
    double c = 0.1;
    double t0 = 0.0;
};

/// v_i = x_i/(2 z tau), rho = (c/tau^(2-1/z)
///   + (2z-1)^2 |x|^2 / (4 a z^2 (d + 2(2z-1)) tau^2))^(d/(2(2z-1))).
/// Both density terms are positive, so any z > 1/2 is admissible; z <= 1/2 is
/// rejected (the homogeneous term would grow with time).
inline FluidSolution lifshitz_scaling_solution(const LifshitzParams& p) {
    detail::require(p.d >= 1 && p.d <= max_dim, errc::invalid_argument, "d must be 1..3");
    if (!(p.z > Rational(1, 2)))
        throw error(errc::invalid_dynamical_exponent,
                    "dynamical exponent out of range: z = " + p.z.str() + " must exceed 1/2");
    detail::require(p.a > 0, errc::non_positive, "a must be > 0");
    detail::require(p.c > 0, errc::non_positive, "c must be > 0");

    const double z = p.z.to_double();
    const double e_time = 2.0 - 1.0 / z;
    const double e_rho = p.d / (2.0 * (2.0 * z - 1.0));
    const double kappa =
        (2.0 * z - 1.0) * (2.0 * z - 1.0) / (4.0 * p.a * z * z * (p.d + 2.0 * (2.0 * z - 1.0)));
    const double half_inv_z = 1.0 / (2.0 * z);
    const double t0 = p.t0;
    const double c = p.c;
    const int dim = p.d;

    FluidSolution sol;
    sol.family = Family::LifshitzScaling;
    sol.dim = p.d;
    sol.z = p.z;
    sol.eos = EquationOfState::lifshitz(p.z, p.d, p.a);
    sol.domain = SpacetimeDomain::all_space(p.d, -p.t0);
    sol.params = {{"z", p.z.str()}, {"d", p.d}, {"a", p.a}, {"c", p.c}, {"t0", p.t0}};
    sol.density = [c, kappa, e_time, e_rho, t0, dim](double t, const Vec& x) {
        double tau = t + t0;
        if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
        double arg = c / std::pow(tau, e_time) + kappa * norm2(x, dim) / (tau * tau);
        if (!(arg > 0)) throw error(errc::non_positive_density_domain, "density argument <= 0");
        return std::pow(arg, e_rho);
    };
    sol.velocity = [half_inv_z, t0, dim](double t, const Vec& x) {
        double tau = t + t0;
        Vec v{};
        for (int i = 0; i < dim; ++i) v[i] = half_inv_z * x[i] / tau;
        return v;
    };
    sol.scaling = ScalingFlow{Rational(1) / (Rational(2) * p.z), p.t0};
    AffineFlow af;
    af.t_offset = p.t0;
    af.A = LaurentPoly::monomial(Rational(1) / (Rational(2) * p.z), -1);
    sol.affine = af;
    return sol;
}

// ---------------------------------------------------------------------------
// Special-conformal deformation of the scaling family (closed form)
// ---------------------------------------------------------------------------

/// v'_i = ell (1+2 gamma t) x_i / (t (1+gamma t)), with the density argument
/// carried along the deformed time t(1+gamma t). gamma = 0 reproduces the base
/// solution exactly.
inline FluidSolution conformal_deformed_solution(const GcaScalingParams& p, double gamma) {
    detail::require(gamma >= 0, errc::invalid_argument, "gamma must be >= 0");
    detail::require(p.t0 == 0.0, errc::invalid_argument,
                    "closed-form conformal deformation assumes t0 = 0");
    auto base = gca_scaling_solution(p); // validates parameters

    const Rational P = ell_product(p.ell);
    const Rational elld = p.ell.value() * Rational(p.d);
    const double beta = -P.to_double() / (2.0 * p.a * (1.0 + elld.to_double()));
    const double exponent = elld.to_double();
    const long long pow_tau = p.ell.doubled() + 1;
    const double ell_d = p.ell.to_double();
    const double c = p.c;
    const int dim = p.d;

    FluidSolution sol;
    sol.family = Family::GcaConformalDeformed;
    sol.dim = p.d;
    sol.ell = p.ell;
    sol.eos = base.eos;
    sol.domain = SpacetimeDomain::all_space(p.d, 0.0);
    sol.params = {{"ell", p.ell.str()}, {"d", p.d}, {"a", p.a}, {"c", p.c}, {"gamma", gamma}};
    if (p.ell.is_integer()) {
        const long long ld_int = elld.num();
        sol.density = [c, ld_int, gamma](double t, const Vec&) {
            if (!(t > 0)) throw error(errc::domain_exceeded, "t must be positive");
            return c / detail::pow_int(t * (1.0 + gamma * t), ld_int);
        };
    } else {
        sol.density = [c, beta, exponent, pow_tau, gamma, dim](double t, const Vec& x) {
            if (!(t > 0)) throw error(errc::domain_exceeded, "t must be positive");
            double s = t * (1.0 + gamma * t);
            double arg = c / s + beta * norm2(x, dim) / detail::pow_int(s, pow_tau);
            if (!(arg > 0))
                throw error(errc::non_positive_density_domain, "density argument <= 0");
            return std::pow(arg, exponent);
        };
    }
    sol.velocity = [ell_d, gamma, dim](double t, const Vec& x) {
        double f = ell_d * (1.0 + 2.0 * gamma * t) / (t * (1.0 + gamma * t));
        Vec v{};
        for (int i = 0; i < dim; ++i) v[i] = f * x[i];
        return v;
    };
    return sol;
}

// ---------------------------------------------------------------------------
// Viscous scaling family
// ---------------------------------------------------------------------------

struct ViscousParams {
    EllParameter ell;
    int d = 1;
    double a = 0.5;
    double c = 0.1;
    double eta0 = 0.0;
    double xi0 = 0.0;
    double t0 = 0.0;
};

namespace detail {

/// Per-point solver for the half-integer viscous profile:
///   a(ld+1) w^(1/ld) - xi0 ld ln w + P |y|^2 / 2 = c.
/// With xi0 > 0 the left side is convex with a single interior minimum w*, so
/// there are up to two roots; the branch continuous in y and in the xi0 -> 0
/// limit is the upper one (w >= w*), anchored at the inviscid profile.
struct ViscousRoot {
    double a_ld1;  // a (ld + 1)
    double inv_ld; // 1/(ld)
    double ld;
    double xi0;
    double P;      // ell product (negative)
    double c;

    double lhs(double w, double y2) const {
        double v = a_ld1 * std::pow(w, inv_ld) + 0.5 * P * y2;
        if (xi0 > 0) v -= xi0 * ld * std::log(w);
        return v;
    }

    double solve(double y2, bool* ambiguous = nullptr) const {
        if (xi0 == 0.0) {
            double R = c - 0.5 * P * y2;
            if (!(R > 0)) throw error(errc::no_root_in_bracket, "no positive root (R <= 0)");
            return std::pow(R / a_ld1, ld);
        }
        // interior minimum of the left side
        double w_star = std::pow(xi0 * ld * ld / a_ld1, ld);
        double g_star = lhs(w_star, y2) - c;
        if (g_star > 0)
            throw error(errc::no_root_in_bracket,
                        "transcendental equation has no root at |y|^2 = " + std::to_string(y2));
        if (ambiguous) *ambiguous = g_star < 0;
        // upper root: expand until lhs - c > 0
        double R = c - 0.5 * P * y2;
        double w_hi = std::max(std::pow(std::max(R, 1e-300) / a_ld1, ld) * 10.0, w_star * 10.0);
        int guard = 0;
        while (lhs(w_hi, y2) - c < 0) {
            w_hi *= 10.0;
            if (++guard > 600) throw error(errc::no_root_in_bracket, "bracket expansion failed");
        }
        double lo = w_star, hi = w_hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (lhs(mid, y2) - c < 0) lo = mid;
            else hi = mid;
            if (hi - lo <= 1e-16 * hi) break;
        }
        double w = 0.5 * (lo + hi);
        // Newton polish to machine-level equation residual
        for (int it = 0; it < 8; ++it) {
            double g = lhs(w, y2) - c;
            double dg = a_ld1 * inv_ld * std::pow(w, inv_ld - 1.0) - xi0 * ld / w;
            if (dg == 0) break;
            double step = g / dg;
            double next = w - step;
            if (!(next > 0)) break;
            w = next;
            if (std::abs(step) <= 1e-17 * w) break;
        }
        return w;
    }
};

} // namespace detail

/// Viscous scaling solution with eta = eta0 rho, xi = xi0 rho. Integer ell
/// keeps the inviscid closed form (homogeneous density, vanishing stress
/// divergence); half-integer ell solves the transcendental relation per point.
inline FluidSolution viscous_solution(const ViscousParams& p) {
    detail::require(p.d >= 1 && p.d <= max_dim, errc::invalid_argument, "d must be 1..3");
    detail::require(p.ell.is_admissible(), errc::inadmissible_ell,
                    "ell = " + p.ell.str() + " is not integer or (1+4k)/2");
    detail::require(p.a > 0, errc::non_positive, "a must be > 0");
    detail::require(p.eta0 >= 0 && p.xi0 >= 0, errc::non_positive,
                    "viscosity constants must be >= 0");

    const Rational elld_r = p.ell.value() * Rational(p.d);
    const double elld = elld_r.to_double();
    const double ell_d = p.ell.to_double();
    const double t0 = p.t0;
    const double c = p.c;
    const int dim = p.d;

    FluidSolution sol;
    sol.dim = p.d;
    sol.ell = p.ell;
    sol.eos = EquationOfState::galilei(p.ell, p.d, p.a);
    sol.domain = SpacetimeDomain::all_space(p.d, -p.t0);
    sol.viscosity = Viscosity{p.eta0, p.xi0};
    sol.params = {{"ell", p.ell.str()}, {"d", p.d},       {"a", p.a},  {"c", p.c},
                  {"eta0", p.eta0},     {"xi0", p.xi0},   {"t0", p.t0}};
    sol.velocity = [ell_d, t0, dim](double t, const Vec& x) {
        double tau = t + t0;
        Vec v{};
        for (int i = 0; i < dim; ++i) v[i] = ell_d * x[i] / tau;
        return v;
    };
    sol.scaling = ScalingFlow{p.ell.value(), p.t0};
    AffineFlow af;
    af.t_offset = p.t0;
    af.A = LaurentPoly::monomial(p.ell.value(), -1);
    sol.affine = af;

    if (p.ell.is_integer()) {
        detail::require(p.c > 0, errc::non_positive, "c must be > 0");
        sol.family = Family::ViscousGcaInteger;
        const long long n = elld_r.num();
        sol.density = [c, n, t0](double t, const Vec&) {
            double tau = t + t0;
            if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
            return c / detail::pow_int(tau, n);
        };
        return sol;
    }

    sol.family = Family::ViscousGcaHalfInteger;
    detail::ViscousRoot root;
    root.ld = elld;
    root.inv_ld = 1.0 / elld;
    root.a_ld1 = p.a * (elld + 1.0);
    root.xi0 = p.xi0;
    root.P = ell_product(p.ell).to_double();
    root.c = p.c;

    // probe the origin: the root must exist there, and we flag multiplicity
    bool ambiguous = false;
    double w_upper = root.solve(0.0, &ambiguous);
    if (ambiguous) {
        // locate the discarded lower branch at y = 0 for the record
        double w_star = std::pow(p.xi0 * elld * elld / (p.a * (elld + 1.0)), elld);
        double lo = w_star;
        while (root.lhs(lo, 0.0) - p.c < 0 && lo > 1e-290) lo *= 0.1;
        double hi = w_star;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (root.lhs(mid, 0.0) - p.c < 0) hi = mid;
            else lo = mid;
        }
        sol.notes.push_back(
            "AmbiguousRoot: transcendental relation has two branches (at y = 0: w = " +
            std::to_string(0.5 * (lo + hi)) + " and w = " + std::to_string(w_upper) +
            "); the branch continuous in y and in the xi0 -> 0 limit (upper) is used");
    }

    const double ell_double = p.ell.to_double();
    sol.density = [root, elld, ell_double, t0, dim](double t, const Vec& x) {
        double tau = t + t0;
        if (!(tau > 0)) throw error(errc::domain_exceeded, "t + t0 must be positive");
        double y2 = 0.0;
        double tl = std::pow(tau, ell_double);
        for (int i = 0; i < dim; ++i) {
            double yi = x[i] / tl;
            y2 += yi * yi;
        }
        double w = root.solve(y2);
        if (!(w > 0)) throw error(errc::non_positive_density_domain, "w <= 0");
        return w / std::pow(tau, elld);
    };
    return sol;
}

/// Equation residual of the viscous transcendental relation at a point of an
/// already-built half-integer solution (diagnostic used by reports and tests).
inline double viscous_root_residual(const FluidSolution& sol, double t, const Vec& x) {
    if (sol.family != Family::ViscousGcaHalfInteger)
        throw error(errc::invalid_argument, "root residual only defined for the half-integer family");
    double a = sol.params.at("a").get<double>();
    double c = sol.params.at("c").get<double>();
    double xi0 = sol.params.at("xi0").get<double>();
    double t0 = sol.params.at("t0").get<double>();
    double elld = sol.ell->value().to_double() * sol.dim;
    double tau = t + t0;
    double w = sol.density(t, x) * std::pow(tau, elld);
    double y2 = norm2(x, sol.dim) / std::pow(tau, 2.0 * sol.ell->to_double());
    double lhs = a * (elld + 1.0) * std::pow(w, 1.0 / elld) + 0.5 * ell_product(*sol.ell).to_double() * y2;
    if (xi0 > 0) lhs -= xi0 * elld * std::log(w);
    return lhs - c;
}

// ---------------------------------------------------------------------------
// Catalog manifest
// ---------------------------------------------------------------------------

/// Machine-readable listing of every solution family: parameter schemas and
/// admissibility rules, used by the CLI for discovery.
inline json catalog_manifest() {
    json j = json::array();
    auto entry = [&](const char* name, const char* description, json params, json constraints) {
        j.push_back({{"family", name},
                     {"description", description},
                     {"parameters", std::move(params)},
                     {"constraints", std::move(constraints)}});
    };
    entry("gca-scaling",
          "Bjorken-type scaling flow v = ell x/t with conformal Galilei symmetry",
          {{"ell", "rational (half)integer"}, {"d", "1..3"}, {"a", "> 0"}, {"c", "> 0"},
           {"t0", "real"}},
          {{"ell", "integer or (1+4k)/2; other half-integers make the density negative"}});
    entry("gca-quartic-1d",
          "general scale-invariant branch in 1+1 dimensions (ell = 1/2), quartic u(y)",
          {{"c1", "real"}, {"c2", "real"}, {"a", "> 0"}, {"sign1", "+-1"}, {"sign2", "+-1"},
           {"half_line", "x>0 | x<0"}, {"t0", "real"}},
          {{"positivity", "signs, constants and half-line must keep rho = w(y)/x > 0"}});
    entry("gca-continuity-branch-1d",
          "u = y/2 branch in 1+1 dimensions: v = x/(2t), Euler equation fixes w(y)",
          {{"c", "real"}, {"a", "> 0"}, {"sign", "+-1"}, {"half_line", "x>0 | x<0"},
           {"t0", "real"}},
          {{"positivity", "sign must match the half-line"}});
    entry("gca-acceleration",
          "acceleration-subgroup family rho = c/t^n, v = (n x + c_{-1} + c_0 t)/t",
          {{"ell", "rational (half)integer"}, {"n", "0..2*ell"}, {"c", "> 0"},
           {"c_minus1", "real"}, {"c_0", "real"}, {"a", "> 0"}, {"t0", "real"}},
          {{"constants", "(c_{-1}, c_0) restricted by D^(2l) v = 0; runaway branches rejected"}});
    entry("gca-conformal-deformed",
          "special-conformal deformation of the scaling flow",
          {{"ell", "rational (half)integer"}, {"d", "1..3"}, {"a", "> 0"}, {"c", "> 0"},
           {"gamma", ">= 0"}},
          {{"ell", "admissible as for gca-scaling"}});
    entry("gca-acceleration-deformed",
          "scaling flow shifted by 2*ell+1 constant acceleration vectors",
          {{"base", "gca-scaling parameters"}, {"accel", "(2*ell+1) x d matrix"}},
          {{"construction", "built through the transform engine"}});
    entry("lifshitz",
          "anisotropic scaling flow v = x/(2zt) with Lifshitz symmetry",
          {{"z", "rational or decimal"}, {"d", "1..3"}, {"a", "> 0"}, {"c", "> 0"},
           {"t0", "real"}},
          {{"z", "strictly greater than 1/2"}});
    entry("viscous-gca-integer",
          "viscous scaling flow, integer ell: homogeneous density, eta = eta0 rho, xi = xi0 rho",
          {{"ell", "integer"}, {"d", "1..3"}, {"a", "> 0"}, {"c", "> 0"}, {"eta0", ">= 0"},
           {"xi0", ">= 0"}, {"t0", "real"}},
          {{"ell", "integer"}});
    entry("viscous-gca-half-integer",
          "viscous scaling flow, half-integer ell: density from a per-point transcendental solve",
          {{"ell", "(1+4k)/2"}, {"d", "1..3"}, {"a", "> 0"}, {"c", "real"}, {"eta0", ">= 0"},
           {"xi0", ">= 0"}, {"t0", "real"}},
          {{"roots", "upper branch selected; AmbiguousRoot flagged when two branches exist"}});
    return j;
}

} // namespace cfl
