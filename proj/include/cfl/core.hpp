#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/laurent.hpp"
#include "cfl/rational.hpp"

#include <nlohmann/json.hpp>

namespace cfl {

using json = nlohmann::ordered_json;

/// Spatial point, up to three dimensions. Unused components stay zero.
using Vec = std::array<double, 3>;

inline constexpr int max_dim = 3;

/// Nested material derivatives become intractable past this order; the group
/// parameter is capped accordingly (2*ell <= 20).
inline constexpr long long max_doubled_ell = 20;

inline double dot(const Vec& a, const Vec& b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a, int d) { return dot(a, a, d); }

// ---------------------------------------------------------------------------
// EllParameter
// ---------------------------------------------------------------------------

/// The (half)integer group parameter ell.
///
/// ell must be a positive integer or half-integer. Integer ell always admits
/// the scaling-family density; among half-integers only ell = (1+4k)/2 does,
/// because the product ell(ell-1)...(ell-2*ell) alternates in sign and the
/// density expression needs a non-negative quadratic term.
class EllParameter {
public:
    static EllParameter validate(const Rational& value) {
        Rational doubled = value * Rational(2);
        if (!doubled.is_integer())
            throw error(errc::not_half_integer, "2*ell = " + doubled.str() + " is not an integer");
        if (value.sign() <= 0)
            throw error(errc::non_positive, "ell = " + value.str() + " must be positive");
        if (doubled.num() > max_doubled_ell)
            throw error(errc::out_of_supported_range,
                        "ell = " + value.str() + " exceeds supported cap 2*ell <= " +
                            std::to_string(max_doubled_ell));
        return EllParameter(value, doubled.num());
    }

    static EllParameter validate(const std::string& text) { return validate(Rational::parse(text)); }

    const Rational& value() const { return value_; }
    long long doubled() const { return doubled_; }

    bool is_integer() const { return doubled_ % 2 == 0; }
    bool is_half_integer() const { return doubled_ % 2 != 0; }

    /// Integer ell, or half-integer of the form (1+4k)/2 (i.e. 2*ell = 1 mod 4).
    bool is_admissible() const { return is_integer() || doubled_ % 4 == 1; }

    double to_double() const { return value_.to_double(); }
    std::string str() const { return value_.str(); }

    friend bool operator==(const EllParameter& a, const EllParameter& b) {
        return a.doubled_ == b.doubled_;
    }

private:
    EllParameter(Rational v, long long doubled) : value_(v), doubled_(doubled) {}

    Rational value_;
    long long doubled_ = 0;
};

inline EllParameter validate_ell(const Rational& value) { return EllParameter::validate(value); }

/// Product (ell-0)(ell-1)...(ell-2*ell), exactly. Zero iff ell is an integer;
/// negative on the admissible half-integer sequence (1+4k)/2, positive on
/// (3+4k)/2.
inline Rational ell_product(const EllParameter& ell) {
    Rational p(1);
    for (long long k = 0; k <= ell.doubled(); ++k) p *= ell.value() - Rational(k);
    return p;
}

// ---------------------------------------------------------------------------
// Equation of state
// ---------------------------------------------------------------------------

/// Polytropic pressure law p = a * rho^exponent with the exponent fixed by the
/// symmetry family: 1 + 1/(ell*d) for the conformal Galilei equations,
/// 1 + 2(2z-1)/d for the Lifshitz equations.
struct EquationOfState {
    double a = 1.0;
    Rational exponent{1};

    static EquationOfState galilei(const EllParameter& ell, int d, double a) {
        require_positive(a);
        return {a, Rational(1) + Rational(1) / (ell.value() * Rational(d))};
    }

    static EquationOfState lifshitz(const Rational& z, int d, double a) {
        require_positive(a);
        return {a, Rational(1) + Rational(2) * (Rational(2) * z - Rational(1)) / Rational(d)};
    }

    double pressure(double rho) const { return a * std::pow(rho, exponent.to_double()); }

private:
    static void require_positive(double a) {
        if (!(a > 0.0)) throw error(errc::non_positive, "equation-of-state constant a must be > 0");
    }
};

// ---------------------------------------------------------------------------
// Spacetime domain
// ---------------------------------------------------------------------------

/// Validity region of a solution: a time interval with t_min > 0, per-axis
/// spatial intervals (possibly unbounded), and excluded regions given as
/// predicates (e.g. the x = 0 line for the 1d half-line families).
struct SpacetimeDomain {
    struct Excluded {
        std::string description;
        std::function<bool(double, const Vec&)> contains; // true = excluded
    };

    int dim = 1;
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
    std::array<std::pair<double, double>, 3> x_ranges{};
    std::vector<Excluded> excluded;

    static SpacetimeDomain all_space(int dim, double t_min = 0.0) {
        SpacetimeDomain d;
        d.dim = dim;
        d.t_min = t_min;
        constexpr double inf = std::numeric_limits<double>::infinity();
        for (int i = 0; i < max_dim; ++i) d.x_ranges[i] = {-inf, inf};
        return d;
    }

    bool contains(double t, const Vec& x) const {
        if (!(t > t_min) || !(t < t_max)) return false;
        for (int i = 0; i < dim; ++i)
            if (!(x[i] >= x_ranges[i].first && x[i] <= x_ranges[i].second)) return false;
        for (const auto& e : excluded)
            if (e.contains(t, x)) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// FluidSolution
// ---------------------------------------------------------------------------

enum class Family {
    GcaScaling,
    GcaQuartic1d,
    GcaContinuityBranch1d,
    GcaAcceleration,
    GcaConformalDeformed,
    GcaAccelerationDeformed,
    LifshitzScaling,
    ViscousGcaInteger,
    ViscousGcaHalfInteger,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::GcaScaling: return "gca-scaling";
        case Family::GcaQuartic1d: return "gca-quartic-1d";
        case Family::GcaContinuityBranch1d: return "gca-continuity-branch-1d";
        case Family::GcaAcceleration: return "gca-acceleration";
        case Family::GcaConformalDeformed: return "gca-conformal-deformed";
        case Family::GcaAccelerationDeformed: return "gca-acceleration-deformed";
        case Family::LifshitzScaling: return "lifshitz";
        case Family::ViscousGcaInteger: return "viscous-gca-integer";
        case Family::ViscousGcaHalfInteger: return "viscous-gca-half-integer";
    }
    return "unknown";
}

/// Velocity fields of the form v_i(t,x) = A(tau) x_i + B_i(tau), tau = t + t0,
/// with Laurent-polynomial coefficients. Closed under the material derivative,
/// which gives residual checks an exact derivative engine.
struct AffineFlow {
    double t_offset = 0.0; // tau = t + t_offset
    LaurentPoly A;
    std::array<LaurentPoly, 3> B{};
};

/// Marks v_i = coef * x_i / (t + t0): the Bjorken-type scaling flows
/// (coef = ell) and their Lifshitz analogue (coef = 1/(2z)).
struct ScalingFlow {
    Rational coef;
    double t_offset = 0.0;
};

/// Linear viscosity closures eta = eta0 * rho, xi = xi0 * rho.
struct Viscosity {
    double eta0 = 0.0;
    double xi0 = 0.0;
};

/// An exact solution: evaluable density/velocity fields over d spatial
/// dimensions plus the metadata residual checks and transforms need.
/// Evaluation is pure; instances are safe to share across threads.
struct FluidSolution {
    Family family = Family::GcaScaling;
    int dim = 1;
    std::optional<EllParameter> ell; // Galilei families
    std::optional<Rational> z;       // Lifshitz family
    EquationOfState eos;
    SpacetimeDomain domain;
    json params; // family-specific parameter record (catalog/CLI manifest)

    std::function<double(double, const Vec&)> density;
    std::function<Vec(double, const Vec&)> velocity;

    std::optional<ScalingFlow> scaling;
    std::optional<AffineFlow> affine;
    std::optional<Viscosity> viscosity;

    /// Implementation choices worth surfacing in reports (e.g. viscous root
    /// branch selection).
    std::vector<std::string> notes;

    /// For transform images: the pre-image solution and, for acceleration
    /// deformations, the shift vectors a^(0..2l) (kept so that stacked
    /// accelerations merge into one exact vector sum).
    std::shared_ptr<const FluidSolution> transform_base;
    std::vector<Vec> accel_vectors;

    std::string id() const {
        std::string s = family_name(family);
        s += " d=" + std::to_string(dim);
        if (ell) s += " ell=" + ell->str();
        if (z) s += " z=" + z->str();
        return s;
    }

    double rho(double t, const Vec& x) const { return density(t, x); }
    Vec v(double t, const Vec& x) const { return velocity(t, x); }

    /// Shear / volume viscosity fields eta = eta0 rho, xi = xi0 rho.
    double eta(double t, const Vec& x) const {
        if (!viscosity) throw error(errc::invalid_argument, "solution carries no viscosity");
        return viscosity->eta0 * density(t, x);
    }
    double xi(double t, const Vec& x) const {
        if (!viscosity) throw error(errc::invalid_argument, "solution carries no viscosity");
        return viscosity->xi0 * density(t, x);
    }

    /// 2*ell for Galilei families, 1 for Lifshitz: the number of material
    /// derivatives in the momentum equation.
    int euler_order() const { return ell ? static_cast<int>(ell->doubled()) : 1; }
};

} // namespace cfl
