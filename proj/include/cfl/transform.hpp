#pragma once

#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "cfl/catalog.hpp"
#include "cfl/core.hpp"
#include "cfl/residual.hpp"

namespace cfl {

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

/// SL(2,R) element acting as t' = (alpha t + beta)/(gamma t + delta) on time
/// and by the conformal weight (dt'/dt)^ell on space.
struct Sl2Element {
    double alpha = 1.0, beta = 0.0, gamma = 0.0, delta = 1.0;

    void validate() const {
        if (std::abs(alpha * delta - beta * gamma - 1.0) > 1e-14)
            throw error(errc::invalid_argument, "SL(2,R) determinant must be 1");
    }

    static Sl2Element identity() { return {}; }
    static Sl2Element time_translation(double b) { return {1.0, b, 0.0, 1.0}; }
    static Sl2Element dilatation(double lambda) {
        return {std::exp(lambda / 2.0), 0.0, 0.0, std::exp(-lambda / 2.0)};
    }
    /// t' = t/(1 - g t): the finite special conformal transformation.
    static Sl2Element special_conformal(double g) { return {1.0, 0.0, -g, 1.0}; }

    /// Composition acting as first `inner`, then `*this` (matrix product).
    Sl2Element compose(const Sl2Element& inner) const {
        return {alpha * inner.alpha + beta * inner.gamma, alpha * inner.beta + beta * inner.delta,
                gamma * inner.alpha + delta * inner.gamma, gamma * inner.beta + delta * inner.delta};
    }

    double map_time(double t) const { return (alpha * t + beta) / (gamma * t + delta); }
};

/// 2*ell + 1 constant vectors a^(0)..a^(2*ell) shifting the flow by
/// sum_n a^(n) t^n.
struct AccelerationElement {
    std::vector<Vec> a;

    static AccelerationElement zero(const EllParameter& ell) {
        AccelerationElement e;
        e.a.assign(static_cast<size_t>(ell.doubled() + 1), Vec{});
        return e;
    }
};

/// One Lifshitz group factor; finite transformations compose as ordered lists.
struct LifshitzElement {
    enum class Kind { TimeTranslation, Dilatation, SpaceTranslation, Boost };
    Kind kind = Kind::TimeTranslation;
    double scalar = 0.0; // beta or lambda
    Vec vec{};           // a^(0) or a^(1)

    static LifshitzElement time_translation(double beta) {
        return {Kind::TimeTranslation, beta, {}};
    }
    static LifshitzElement dilatation(double lambda) { return {Kind::Dilatation, lambda, {}}; }
    static LifshitzElement space_translation(const Vec& a) {
        return {Kind::SpaceTranslation, 0.0, a};
    }
    static LifshitzElement boost(const Vec& a) { return {Kind::Boost, 0.0, a}; }
};

// ---------------------------------------------------------------------------
// SL(2,R) action on solutions
// ---------------------------------------------------------------------------

/// Pulls a Galilei-family solution back through a finite SL(2,R) map:
///   rho'(s,xi) = (gamma t + delta)^(2 l d) rho(t, x),
///   v'_i(s,xi) = (gamma t + delta)^(2-2l) v_i(t,x) - 2 l gamma (gamma t + delta) xi_i,
/// with t the inverse Moebius image of s and x_i = (gamma t + delta)^(2l) xi_i.
/// The image is a lazy evaluable; nothing is resampled.
inline FluidSolution apply_sl2(const Sl2Element& g, const FluidSolution& sol) {
    g.validate();
    if (!sol.ell) throw error(errc::parameter_mismatch, "SL(2,R) acts on Galilei-family solutions");
    const long long doubled = sol.ell->doubled(); // 2l
    const int d = sol.dim;
    const double lval = sol.ell->to_double();

    // The map acts on the part of the base time range where the conformal
    // factor gamma t + delta is positive (it is monotone increasing there,
    // with derivative 1/(gamma t + delta)^2). The pole t = -delta/gamma is
    // excluded by construction; if nothing of the base range survives, the
    // element cannot act.
    double base_lo = sol.domain.t_min;
    double base_hi = sol.domain.t_max;
    if (g.gamma > 0.0) base_lo = std::max(base_lo, -g.delta / g.gamma);
    else if (g.gamma < 0.0) base_hi = std::min(base_hi, -g.delta / g.gamma);
    else if (!(g.delta > 0.0))
        throw error(errc::pole_in_domain, "conformal factor negative on the whole domain");
    if (!(base_lo < base_hi))
        throw error(errc::pole_in_domain,
                    "time pole t = " + std::to_string(-g.delta / g.gamma) +
                        " leaves no usable part of the solution domain");

    auto inverse_time = [g](double s) {
        double den = g.alpha - g.gamma * s;
        if (den == 0.0) throw error(errc::pole_in_domain, "image time hits the map pole");
        return (g.delta * s - g.beta) / den;
    };

    FluidSolution out;
    out.family = Family::GcaConformalDeformed;
    out.dim = d;
    out.ell = sol.ell;
    out.eos = sol.eos;
    out.notes = sol.notes;
    out.params = {{"sl2", {g.alpha, g.beta, g.gamma, g.delta}}, {"base", sol.params},
                  {"base_family", family_name(sol.family)}};
    out.transform_base = std::make_shared<FluidSolution>(sol);

    constexpr double inf = std::numeric_limits<double>::infinity();
    double s_lo, s_hi;
    if (g.gamma > 0.0 && base_lo == -g.delta / g.gamma) s_lo = -inf;
    else s_lo = g.map_time(base_lo);
    if (!std::isfinite(base_hi)) s_hi = g.gamma != 0.0 ? g.alpha / g.gamma : inf;
    else if (g.gamma < 0.0 && base_hi == -g.delta / g.gamma) s_hi = inf;
    else s_hi = g.map_time(base_hi);
    out.domain = SpacetimeDomain::all_space(d, s_lo);
    out.domain.t_max = s_hi;
    out.domain.x_ranges = sol.domain.x_ranges; // conservative; exact region via predicate
    auto base_dom = sol.domain;
    auto factor_of = [g](double s) {
        // gamma t + delta = 1/(alpha - gamma s) because the determinant is 1
        return 1.0 / (g.alpha - g.gamma * s);
    };
    out.domain.excluded.push_back(
        {"pulled-back point outside the base domain",
         [base_dom, inverse_time, factor_of, doubled, d](double s, const Vec& xi) {
             double den_t;
             try {
                 den_t = inverse_time(s);
             } catch (const error&) {
                 return true;
             }
             double f = factor_of(s);
             Vec x{};
             double fl = detail::pow_int(f, doubled);
             for (int i = 0; i < d; ++i) x[i] = fl * xi[i];
             return !base_dom.contains(den_t, x);
         }});

    auto base_rho = sol.density;
    auto base_v = sol.velocity;
    out.density = [base_rho, inverse_time, factor_of, doubled, d](double s, const Vec& xi) {
        double t = inverse_time(s);
        double f = factor_of(s);
        double fl = detail::pow_int(f, doubled);
        Vec x{};
        for (int i = 0; i < d; ++i) x[i] = fl * xi[i];
        return detail::pow_int(f, doubled * d) * base_rho(t, x);
    };
    const double two_l_gamma = 2.0 * lval * g.gamma;
    out.velocity = [base_v, inverse_time, factor_of, doubled, d, two_l_gamma](double s,
                                                                              const Vec& xi) {
        double t = inverse_time(s);
        double f = factor_of(s);
        double fl = detail::pow_int(f, doubled);
        Vec x{};
        for (int i = 0; i < d; ++i) x[i] = fl * xi[i];
        Vec v = base_v(t, x);
        double fv = detail::pow_int(f, 2 - doubled);
        Vec outv{};
        for (int i = 0; i < d; ++i) outv[i] = fv * v[i] - two_l_gamma * f * xi[i];
        return outv;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Acceleration action
// ---------------------------------------------------------------------------

/// v'_i(t,x) = v_i(t, x - sum_n a^(n) t^n) + sum_n n a^(n)_i t^(n-1),
/// rho'(t,x) = rho(t, x - sum_n a^(n) t^n). Stacked acceleration images merge
/// their shift vectors, so the order of application cannot matter even at the
/// last bit.
inline FluidSolution apply_acceleration(const AccelerationElement& g, const FluidSolution& sol) {
    if (!sol.ell)
        throw error(errc::parameter_mismatch, "accelerations act on Galilei-family solutions");
    const size_t expected = static_cast<size_t>(sol.ell->doubled() + 1);
    if (g.a.size() != expected)
        throw error(errc::invalid_argument,
                    "acceleration element needs " + std::to_string(expected) + " vectors");

    const FluidSolution* base = &sol;
    std::vector<Vec> total = g.a;
    if (sol.family == Family::GcaAccelerationDeformed && sol.transform_base &&
        sol.accel_vectors.size() == expected) {
        base = sol.transform_base.get();
        for (size_t n = 0; n < expected; ++n)
            for (int i = 0; i < sol.dim; ++i) total[n][i] += sol.accel_vectors[n][i];
    }

    const int d = base->dim;
    auto shift = [total, d](double t) {
        Vec s{};
        double tn = 1.0;
        for (size_t n = 0; n < total.size(); ++n) {
            for (int i = 0; i < d; ++i) s[i] += total[n][i] * tn;
            tn *= t;
        }
        return s;
    };
    auto shift_rate = [total, d](double t) {
        Vec s{};
        double tn = 1.0;
        for (size_t n = 1; n < total.size(); ++n) {
            for (int i = 0; i < d; ++i) s[i] += static_cast<double>(n) * total[n][i] * tn;
            tn *= t;
        }
        return s;
    };

    FluidSolution out;
    out.family = Family::GcaAccelerationDeformed;
    out.dim = d;
    out.ell = base->ell;
    out.eos = base->eos;
    out.notes = base->notes;
    json avec = json::array();
    for (const auto& v : total) {
        json row = json::array();
        for (int i = 0; i < d; ++i) row.push_back(v[i]);
        avec.push_back(row);
    }
    out.params = {{"accel", avec}, {"base", base->params},
                  {"base_family", family_name(base->family)}};
    out.transform_base = std::make_shared<FluidSolution>(*base);
    out.accel_vectors = total;

    out.domain = base->domain;
    auto base_dom = base->domain;
    out.domain.excluded.push_back({"shifted point outside the base domain",
                                   [base_dom, shift, d](double t, const Vec& x) {
                                       Vec q = x;
                                       Vec s = shift(t);
                                       for (int i = 0; i < d; ++i) q[i] -= s[i];
                                       return !base_dom.contains(t, q);
                                   }});

    auto base_rho = base->density;
    auto base_v = base->velocity;
    out.density = [base_rho, shift, d](double t, const Vec& x) {
        Vec q = x;
        Vec s = shift(t);
        for (int i = 0; i < d; ++i) q[i] -= s[i];
        return base_rho(t, q);
    };
    out.velocity = [base_v, shift, shift_rate, d](double t, const Vec& x) {
        Vec q = x;
        Vec s = shift(t);
        for (int i = 0; i < d; ++i) q[i] -= s[i];
        Vec v = base_v(t, q);
        Vec r = shift_rate(t);
        for (int i = 0; i < d; ++i) v[i] += r[i];
        return v;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Lifshitz action
// ---------------------------------------------------------------------------

/// Finite Lifshitz transformations: time translation, anisotropic dilatation
/// (t -> e^(lambda z) t, x -> e^(lambda/2) x), space translation and boost.
inline FluidSolution apply_lifshitz(const LifshitzElement& g, const FluidSolution& sol) {
    if (!sol.z) throw error(errc::parameter_mismatch, "Lifshitz maps act on Lifshitz solutions");
    const int d = sol.dim;
    const double z = sol.z->to_double();

    FluidSolution out = sol;
    out.transform_base = std::make_shared<FluidSolution>(sol);
    auto base_rho = sol.density;
    auto base_v = sol.velocity;
    auto base_dom = sol.domain;

    switch (g.kind) {
        case LifshitzElement::Kind::TimeTranslation: {
            double b = g.scalar;
            out.params["transform"] = {{"kind", "time-translation"}, {"beta", b}};
            out.domain.t_min = sol.domain.t_min + b;
            if (std::isfinite(sol.domain.t_max)) out.domain.t_max = sol.domain.t_max + b;
            out.density = [base_rho, b](double t, const Vec& x) { return base_rho(t - b, x); };
            out.velocity = [base_v, b](double t, const Vec& x) { return base_v(t - b, x); };
            out.scaling.reset();
            out.affine.reset();
            if (sol.scaling) out.scaling = ScalingFlow{sol.scaling->coef, sol.scaling->t_offset - b};
            if (sol.affine) {
                AffineFlow af = *sol.affine;
                af.t_offset -= b;
                out.affine = af;
            }
            return out;
        }
        case LifshitzElement::Kind::Dilatation: {
            double lam = g.scalar;
            double st = std::exp(-lam * z);      // time pullback factor
            double sx = std::exp(-lam / 2.0);    // space pullback factor
            double frho = std::exp(-lam * d / 2.0);
            double fv = std::exp(-lam * (z - 0.5));
            out.params["transform"] = {{"kind", "dilatation"}, {"lambda", lam}};
            out.domain.t_min = sol.domain.t_min / st;
            if (std::isfinite(sol.domain.t_max)) out.domain.t_max = sol.domain.t_max / st;
            out.density = [base_rho, st, sx, frho, d](double t, const Vec& x) {
                Vec q{};
                for (int i = 0; i < d; ++i) q[i] = sx * x[i];
                return frho * base_rho(st * t, q);
            };
            out.velocity = [base_v, st, sx, fv, d](double t, const Vec& x) {
                Vec q{};
                for (int i = 0; i < d; ++i) q[i] = sx * x[i];
                Vec v = base_v(st * t, q);
                for (int i = 0; i < d; ++i) v[i] *= fv;
                return v;
            };
            out.scaling.reset();
            out.affine.reset();
            return out;
        }
        case LifshitzElement::Kind::SpaceTranslation: {
            Vec a = g.vec;
            out.params["transform"] = {{"kind", "space-translation"}};
            out.density = [base_rho, a, d](double t, const Vec& x) {
                Vec q = x;
                for (int i = 0; i < d; ++i) q[i] -= a[i];
                return base_rho(t, q);
            };
            out.velocity = [base_v, a, d](double t, const Vec& x) {
                Vec q = x;
                for (int i = 0; i < d; ++i) q[i] -= a[i];
                return base_v(t, q);
            };
            out.scaling.reset();
            out.affine.reset();
            return out;
        }
        case LifshitzElement::Kind::Boost: {
            Vec a = g.vec;
            out.params["transform"] = {{"kind", "boost"}};
            out.density = [base_rho, a, d](double t, const Vec& x) {
                Vec q = x;
                for (int i = 0; i < d; ++i) q[i] -= a[i] * t;
                return base_rho(t, q);
            };
            out.velocity = [base_v, a, d](double t, const Vec& x) {
                Vec q = x;
                for (int i = 0; i < d; ++i) q[i] -= a[i] * t;
                Vec v = base_v(t, q);
                for (int i = 0; i < d; ++i) v[i] += a[i];
                return v;
            };
            out.scaling.reset();
            out.affine.reset();
            return out;
        }
    }
    throw error(errc::invalid_argument, "unknown Lifshitz element");
}

inline FluidSolution apply_lifshitz(const std::vector<LifshitzElement>& list,
                                    const FluidSolution& sol) {
    FluidSolution cur = sol;
    for (const auto& g : list) cur = apply_lifshitz(g, cur);
    return cur;
}

// ---------------------------------------------------------------------------
// Transform specifications (CLI wire format)
// ---------------------------------------------------------------------------

using TransformSpec = std::variant<Sl2Element, AccelerationElement, std::vector<LifshitzElement>>;

/// Accepts {"sl2": {"alpha":..,"beta":..,"gamma":..,"delta":..}} (or a
/// 4-element array), {"accel": [[...], ...]} and {"lifshitz": [{...}, ...]}.
inline TransformSpec parse_transform(const json& j) {
    if (j.contains("sl2")) {
        const auto& s = j["sl2"];
        Sl2Element g;
        if (s.is_array()) {
            if (s.size() != 4) throw error(errc::invalid_argument, "sl2 array needs 4 entries");
            g = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>(), s[3].get<double>()};
        } else {
            g = {s.value("alpha", 1.0), s.value("beta", 0.0), s.value("gamma", 0.0),
                 s.value("delta", 1.0)};
        }
        g.validate();
        return g;
    }
    if (j.contains("accel")) {
        AccelerationElement e;
        for (const auto& row : j["accel"]) {
            Vec v{};
            int i = 0;
            for (const auto& comp : row) {
                if (i >= max_dim) throw error(errc::invalid_argument, "acceleration vector too long");
                v[i++] = comp.get<double>();
            }
            e.a.push_back(v);
        }
        return e;
    }
    if (j.contains("lifshitz")) {
        std::vector<LifshitzElement> list;
        for (const auto& item : j["lifshitz"]) {
            std::string kind = item.at("kind").get<std::string>();
            if (kind == "time-translation")
                list.push_back(LifshitzElement::time_translation(item.at("beta").get<double>()));
            else if (kind == "dilatation")
                list.push_back(LifshitzElement::dilatation(item.at("lambda").get<double>()));
            else if (kind == "space-translation" || kind == "boost") {
                Vec v{};
                int i = 0;
                for (const auto& comp : item.at("a")) v[i++] = comp.get<double>();
                list.push_back(kind == "boost" ? LifshitzElement::boost(v)
                                               : LifshitzElement::space_translation(v));
            } else {
                throw error(errc::invalid_argument, "unknown lifshitz element kind: " + kind);
            }
        }
        return list;
    }
    throw error(errc::invalid_argument, "transform spec needs sl2, accel or lifshitz");
}

inline FluidSolution apply_transform(const TransformSpec& spec, const FluidSolution& sol) {
    if (std::holds_alternative<Sl2Element>(spec)) return apply_sl2(std::get<Sl2Element>(spec), sol);
    if (std::holds_alternative<AccelerationElement>(spec))
        return apply_acceleration(std::get<AccelerationElement>(spec), sol);
    return apply_lifshitz(std::get<std::vector<LifshitzElement>>(spec), sol);
}

// ---------------------------------------------------------------------------
// Covariance harness
// ---------------------------------------------------------------------------

struct CovarianceReport {
    struct Entry {
        Equation equation;
        double base_max_rel;
        double image_max_rel;
        double ratio;
    };
    std::vector<Entry> entries;
    bool pass = true;

    json to_json() const {
        json j;
        j["pass"] = pass;
        j["equations"] = json::array();
        for (const auto& e : entries)
            j["equations"].push_back({{"equation", equation_name(e.equation)},
                                      {"base_max_rel", e.base_max_rel},
                                      {"image_max_rel", e.image_max_rel},
                                      {"ratio", e.ratio}});
        return j;
    }
};

/// Applies a symmetry element and runs the governing residual suite on the
/// image: residual norms must stay within `factor` (default 10x) of the base
/// norms. Base norms are computed through the same engine as the image (tags
/// stripped), so the comparison is engine-to-engine.
inline CovarianceReport covariance_suite(const TransformSpec& g, const FluidSolution& sol,
                                         const GridSpec& grid, StencilConfig cfg = {},
                                         double factor = 10.0) {
    FluidSolution image = apply_transform(g, sol);
    FluidSolution base_cmp = sol;
    if (!image.affine) {
        base_cmp.affine.reset();
        base_cmp.scaling.reset();
    }
    CovarianceReport rep;
    for (Equation eq : governing_equations(sol)) {
        auto rb = run_residual(base_cmp, eq, grid, cfg);
        auto ri = run_residual(image, eq, grid, cfg);
        double floor = 1e-12;
        double ratio = ri.max_rel / std::max(rb.max_rel, floor);
        rep.entries.push_back({eq, rb.max_rel, ri.max_rel, ratio});
        if (ratio > factor) rep.pass = false;
    }
    return rep;
}

} // namespace cfl
