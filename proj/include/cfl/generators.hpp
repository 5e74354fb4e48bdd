#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfl/core.hpp"
#include "cfl/polynomial.hpp"

namespace cfl {

enum class AlgebraFamily { GalileiConformal, Lifshitz };

/// Variable layout shared by all generators over d spatial dimensions:
/// index 0 = t, 1..d = x_i, d+1 = rho, d+2..2d+1 = v_i.
inline int generator_nvars(int d) { return 2 * d + 2; }

inline std::vector<std::string> generator_variable_names(int d) {
    std::vector<std::string> names;
    names.push_back("t");
    for (int i = 1; i <= d; ++i) names.push_back(d == 1 ? "x" : "x" + std::to_string(i));
    names.push_back("rho");
    for (int i = 1; i <= d; ++i) names.push_back(d == 1 ? "v" : "v" + std::to_string(i));
    return names;
}

/// First-order differential operator sum_mu coeff_mu(t,x,rho,v) d/d(var_mu)
/// with polynomial coefficients: the field-extended realization of a symmetry
/// generator. Exact arithmetic throughout.
struct VectorFieldGenerator {
    std::string label;
    AlgebraFamily family = AlgebraFamily::GalileiConformal;
    Rational param; // ell or z
    int d = 1;
    std::vector<Poly> coeffs; // one per base variable

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

    std::string str() const {
        auto names = generator_variable_names(d);
        std::string s;
        for (size_t mu = 0; mu < coeffs.size(); ++mu) {
            if (coeffs[mu].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeffs[mu].str(names) + ")*d/d" + names[mu];
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const VectorFieldGenerator& a, const VectorFieldGenerator& b) {
        return a.coeffs == b.coeffs;
    }
};

namespace detail {

inline VectorFieldGenerator blank_generator(AlgebraFamily fam, const Rational& param, int d,
                                            std::string label) {
    VectorFieldGenerator g;
    g.label = std::move(label);
    g.family = fam;
    g.param = param;
    g.d = d;
    g.coeffs.assign(static_cast<size_t>(generator_nvars(d)), Poly(generator_nvars(d)));
    return g;
}

inline void check_dim(int d) {
    if (d < 1 || d > max_dim) throw error(errc::invalid_argument, "spatial dimension must be 1..3");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Conformal Galilei generators (field-extended realization)
// ---------------------------------------------------------------------------

enum class GcaGen { H, D, K, C };

/// Builds H, D, K or C^(n)_i for the ell-conformal Galilei algebra over d
/// dimensions, acting on (t, x, rho, v). The rho/v coefficients of D and K
/// come from linearizing the finite transformation laws; accelerations leave
/// rho untouched.
inline VectorFieldGenerator make_gca_generator(GcaGen kind, const EllParameter& ell, int d,
                                               int n = -1, int component = 0) {
    detail::check_dim(d);
    if (component < 0 || component >= d)
        throw error(errc::invalid_argument, "generator component out of range");
    const int nv = generator_nvars(d);
    const Rational l = ell.value();
    const int t = 0;
    auto xi = [&](int i) { return 1 + i; };
    const int rho = d + 1;
    auto vi = [&](int i) { return d + 2 + i; };

    switch (kind) {
        case GcaGen::H: {
            auto g = detail::blank_generator(AlgebraFamily::GalileiConformal, l, d, "H");
            g.coeffs[t] = Poly::constant(nv, Rational(1));
            return g;
        }
        case GcaGen::D: {
            // D = t dt + l x_i dx_i - l d rho drho - (1-l) v_i dv_i
            auto g = detail::blank_generator(AlgebraFamily::GalileiConformal, l, d, "D");
            g.coeffs[t] = Poly::variable(nv, t);
            for (int i = 0; i < d; ++i) g.coeffs[xi(i)] = Poly::variable(nv, xi(i), l);
            g.coeffs[rho] = Poly::variable(nv, rho, -l * Rational(d));
            for (int i = 0; i < d; ++i)
                g.coeffs[vi(i)] = Poly::variable(nv, vi(i), -(Rational(1) - l));
            return g;
        }
        case GcaGen::K: {
            // K = t^2 dt + 2l t x_i dx_i - 2l d t rho drho
            //     + (2l x_i + 2(l-1) t v_i) dv_i
            auto g = detail::blank_generator(AlgebraFamily::GalileiConformal, l, d, "K");
            Poly T = Poly::variable(nv, t);
            g.coeffs[t] = T * T;
            for (int i = 0; i < d; ++i)
                g.coeffs[xi(i)] = Rational(2) * l * (T * Poly::variable(nv, xi(i)));
            g.coeffs[rho] = Rational(-2) * l * Rational(d) * (T * Poly::variable(nv, rho));
            for (int i = 0; i < d; ++i)
                g.coeffs[vi(i)] = Poly::variable(nv, xi(i), Rational(2) * l) +
                                  Rational(2) * (l - Rational(1)) * (T * Poly::variable(nv, vi(i)));
            return g;
        }
        case GcaGen::C: {
            if (n < 0 || n > ell.doubled())
                throw error(errc::out_of_range_acceleration_index,
                            "acceleration index n = " + std::to_string(n) + " outside 0..2*ell");
            // C^(n)_i = t^n dx_i + n t^(n-1) dv_i
            auto g = detail::blank_generator(AlgebraFamily::GalileiConformal, l, d,
                                             "C^(" + std::to_string(n) + ")_" +
                                                 std::to_string(component + 1));
            Poly tn = Poly::constant(nv, Rational(1));
            for (int k = 0; k < n; ++k) tn = tn * Poly::variable(nv, t);
            g.coeffs[xi(component)] = tn;
            if (n > 0) {
                Poly tn1 = Poly::constant(nv, Rational(n));
                for (int k = 0; k < n - 1; ++k) tn1 = tn1 * Poly::variable(nv, t);
                g.coeffs[vi(component)] = tn1;
            }
            return g;
        }
    }
    throw error(errc::invalid_argument, "unknown generator kind");
}

// ---------------------------------------------------------------------------
// Lifshitz generators
// ---------------------------------------------------------------------------

enum class LifGen { H, D, C0, C1 };

inline VectorFieldGenerator make_lifshitz_generator(LifGen kind, const Rational& z, int d,
                                                    int component = 0) {
    detail::check_dim(d);
    if (component < 0 || component >= d)
        throw error(errc::invalid_argument, "generator component out of range");
    if (!(z > Rational(1, 2)))
        throw error(errc::invalid_dynamical_exponent,
                    "dynamical exponent z = " + z.str() + " must exceed 1/2");
    const int nv = generator_nvars(d);
    const int t = 0;
    auto xi = [&](int i) { return 1 + i; };
    const int rho = d + 1;
    auto vi = [&](int i) { return d + 2 + i; };

    switch (kind) {
        case LifGen::H: {
            auto g = detail::blank_generator(AlgebraFamily::Lifshitz, z, d, "H");
            g.coeffs[t] = Poly::constant(nv, Rational(1));
            return g;
        }
        case LifGen::D: {
            // D = z t dt + 1/2 x_i dx_i - d/2 rho drho - (z - 1/2) v_i dv_i
            auto g = detail::blank_generator(AlgebraFamily::Lifshitz, z, d, "D");
            g.coeffs[t] = Poly::variable(nv, t, z);
            for (int i = 0; i < d; ++i) g.coeffs[xi(i)] = Poly::variable(nv, xi(i), Rational(1, 2));
            g.coeffs[rho] = Poly::variable(nv, rho, Rational(-d, 2));
            for (int i = 0; i < d; ++i)
                g.coeffs[vi(i)] = Poly::variable(nv, vi(i), -(z - Rational(1, 2)));
            return g;
        }
        case LifGen::C0: {
            auto g = detail::blank_generator(AlgebraFamily::Lifshitz, z, d,
                                             "C^(0)_" + std::to_string(component + 1));
            g.coeffs[xi(component)] = Poly::constant(nv, Rational(1));
            return g;
        }
        case LifGen::C1: {
            // Boost: C^(1)_i = t dx_i + dv_i
            auto g = detail::blank_generator(AlgebraFamily::Lifshitz, z, d,
                                             "C^(1)_" + std::to_string(component + 1));
            g.coeffs[xi(component)] = Poly::variable(nv, t);
            g.coeffs[vi(component)] = Poly::constant(nv, Rational(1));
            return g;
        }
    }
    throw error(errc::invalid_argument, "unknown generator kind");
}

// ---------------------------------------------------------------------------
// Lie bracket
// ---------------------------------------------------------------------------

/// Exact Lie bracket [A,B]^mu = A^nu d_nu(B^mu) - B^nu d_nu(A^mu).
inline VectorFieldGenerator commutator(const VectorFieldGenerator& A,
                                       const VectorFieldGenerator& B) {
    if (A.family != B.family || !(A.param == B.param) || A.d != B.d)
        throw error(errc::parameter_mismatch, "commutator of generators with different parameters");
    auto g = detail::blank_generator(A.family, A.param, A.d, "[" + A.label + "," + B.label + "]");
    const int nv = generator_nvars(A.d);
    for (int mu = 0; mu < nv; ++mu) {
        Poly acc(nv);
        for (int nu = 0; nu < nv; ++nu) {
            if (!A.coeffs[nu].is_zero()) acc = acc + A.coeffs[nu] * B.coeffs[mu].derivative(nu);
            if (!B.coeffs[nu].is_zero()) acc = acc - B.coeffs[nu] * A.coeffs[mu].derivative(nu);
        }
        g.coeffs[mu] = acc;
    }
    return g;
}

/// Linear combination with exact coefficients; used to build expected
/// right-hand sides of structure relations.
inline VectorFieldGenerator lin_comb(
    const std::vector<std::pair<Rational, const VectorFieldGenerator*>>& parts,
    AlgebraFamily fam, const Rational& param, int d, std::string label) {
    auto g = detail::blank_generator(fam, param, d, std::move(label));
    for (const auto& [c, gen] : parts)
        for (size_t mu = 0; mu < g.coeffs.size(); ++mu)
            g.coeffs[mu] = g.coeffs[mu] + c * gen->coeffs[mu];
    return g;
}

inline VectorFieldGenerator jacobiator(const VectorFieldGenerator& A,
                                       const VectorFieldGenerator& B,
                                       const VectorFieldGenerator& C) {
    auto g = lin_comb({}, A.family, A.param, A.d,
                      "jacobi(" + A.label + "," + B.label + "," + C.label + ")");
    auto add = [&](const VectorFieldGenerator& x) {
        for (size_t mu = 0; mu < g.coeffs.size(); ++mu) g.coeffs[mu] = g.coeffs[mu] + x.coeffs[mu];
    };
    add(commutator(commutator(A, B), C));
    add(commutator(commutator(B, C), A));
    add(commutator(commutator(C, A), B));
    return g;
}

} // namespace cfl
