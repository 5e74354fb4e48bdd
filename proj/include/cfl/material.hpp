#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cfl/core.hpp"

namespace cfl {

// ---------------------------------------------------------------------------
// Exact engines
// ---------------------------------------------------------------------------

/// k-th iterate of the material derivative D = d/dt + v.grad built from the
/// advecting field v_i = A(tau) x_i + B_i(tau), applied to another affine
/// field f_i = F(tau) x_i + G_i(tau). The class is closed under D:
///   F_{j+1} = F_j' + A F_j,   G_{j+1,i} = G_{j,i}' + B_i F_j.
/// k = 0 returns the field unchanged.
inline AffineFlow material_derivative_affine(const AffineFlow& advect, const AffineFlow& field,
                                             int k) {
    if (k < 0) throw error(errc::invalid_argument, "derivative order must be >= 0");
    if (advect.t_offset != field.t_offset)
        throw error(errc::parameter_mismatch, "advecting and differentiated fields use different time offsets");
    AffineFlow f = field;
    for (int j = 0; j < k; ++j) {
        LaurentPoly Fn = f.A.derivative() + advect.A * f.A;
        std::array<LaurentPoly, 3> Gn;
        for (int i = 0; i < max_dim; ++i) Gn[i] = f.B[i].derivative() + advect.B[i] * f.A;
        f.A = Fn;
        f.B = Gn;
    }
    return f;
}

/// The common case: D^k v with v advecting itself.
inline AffineFlow material_derivative_affine(const AffineFlow& v, int k) {
    return material_derivative_affine(v, v, k);
}

/// Exact multiplier m_k with D^k (coef * x_i / t) = m_k * x_i / t^(k+1),
/// m_k = coef (coef-1) ... (coef-k). Independent of the spatial dimension.
inline Rational radial_multiplier(const Rational& coef, int k) {
    if (k < 0 || k > static_cast<int>(max_doubled_ell))
        throw error(errc::invalid_argument, "radial multiplier order out of range");
    Rational m = coef;
    for (int j = 1; j <= k; ++j) m *= coef - Rational(j);
    return m;
}

/// Bjorken-type specialization: D^k (ell x_i/t) = m_k x_i / t^(k+1);
/// m_{2 ell} equals ell_product(ell).
inline Rational material_derivative_radial(const EllParameter& ell, int k) {
    return radial_multiplier(ell.value(), k);
}

// ---------------------------------------------------------------------------
// Nested finite-difference engine
// ---------------------------------------------------------------------------

/// Configuration of the nested central-difference evaluator.
///
/// Steps of 0 select the automatic schedule: h = u^(1/(k+order)) scaled by the
/// point magnitude, the truncation/roundoff balance point for a k-fold nest of
/// order-p differences (u = machine epsilon). Accuracy degrades geometrically
/// with depth; see fd_tolerance for the documented expectation.
struct StencilConfig {
    int order = 4;          // central-difference order per application (2 or 4)
    double h_t = 0.0;       // absolute temporal step; 0 = automatic
    double h_x = 0.0;       // absolute spatial step; 0 = automatic
    double h_rel = 1e-4;    // relative step for single outer derivatives (residuals)
    int nesting_depth = 0;  // informational; set by the evaluator
    int max_depth = 20;

    static double auto_step(int k, int order, double scale) {
        constexpr double u = 2.220446049250313e-16;
        return std::pow(u, 1.0 / (k + order)) * scale;
    }
};

/// Documented accuracy schedule for the nested FD engine against the exact
/// engines: 1e-8 through depth 2, then two digits lost per two levels.
inline double fd_tolerance(int k) {
    return 1e-8 * std::pow(100.0, std::max(0, k - 2) / 2.0);
}

namespace detail {

/// Fourth- (or second-) order central difference of a single-variable slice.
/// Symmetric samples are paired before any other arithmetic so that even
/// functions differentiate to exactly zero.
template <typename F>
double central_diff(F&& f, double u, double h, int order) {
    if (order == 2) return (f(u + h) - f(u - h)) / (2.0 * h);
    double d1 = f(u + h) - f(u - h);
    double d2 = f(u + 2.0 * h) - f(u - 2.0 * h);
    return (8.0 * d1 - d2) / (12.0 * h);
}

inline double step_t(const StencilConfig& cfg, double t) { return cfg.h_rel * std::max(t, 0.1); }
inline double step_x(const StencilConfig& cfg, double xi) {
    return cfg.h_rel * (std::abs(xi) + 1.0);
}

struct Lattice {
    int d = 1;          // spatial dimensions
    int nodes = 0;      // per axis
    int radius = 0;
    std::vector<long long> strides; // axis 0 = t, 1..d = x
    long long total = 1;

    long long index(const std::vector<int>& off) const {
        long long ix = 0;
        for (size_t a = 0; a < strides.size(); ++a) ix += (off[a] + radius) * strides[a];
        return ix;
    }
};

} // namespace detail

/// Nested finite-difference material derivative: applies D = d/dt + v.grad
/// k times to a scalar field F, with the advecting velocity v evaluated at
/// every stencil node. Works on a cached lattice of function values, so the
/// cost is (2 k order/2 + 1)^(1+d) field evaluations, not 4^k.
///
/// Throws DomainExceeded if any lattice node leaves `domain` (when given) and
/// DepthExceeded past cfg.max_depth.
inline double material_derivative_fd_scalar(
    const std::function<double(double, const Vec&)>& field,
    const std::function<Vec(double, const Vec&)>& advect, double t, const Vec& x, int d, int k,
    StencilConfig cfg = {}, const SpacetimeDomain* domain = nullptr) {
    if (k < 0) throw error(errc::invalid_argument, "derivative order must be >= 0");
    if (k == 0) return field(t, x);
    if (k > cfg.max_depth)
        throw error(errc::depth_exceeded, "nesting depth " + std::to_string(k) + " exceeds max");
    if (cfg.order != 2 && cfg.order != 4)
        throw error(errc::invalid_argument, "stencil order must be 2 or 4");

    const int half = cfg.order / 2;
    const int radius = k * half;
    const int nodes = 2 * radius + 1;

    double scale_x = 1.0;
    for (int i = 0; i < d; ++i) scale_x = std::max(scale_x, std::abs(x[i]));
    // Automatic steps: the t-step sits at half the truncation/roundoff balance
    // point; the x-step grows with depth (2^((k+1)/2)) because the advective
    // difference is the dominant noise source in deep nests. Calibrated against
    // the exact radial identity; see fd_tolerance.
    double ht = cfg.h_t > 0 ? cfg.h_t
                            : 0.5 * StencilConfig::auto_step(k, cfg.order, std::max(t, 0.1));
    // keep the whole lattice at positive time
    ht = std::min(ht, 0.6 * t / radius);
    const double hx = cfg.h_x > 0 ? cfg.h_x
                                  : StencilConfig::auto_step(k, cfg.order, scale_x) *
                                        std::pow(2.0, (k + 1) / 2.0);

    detail::Lattice lat;
    lat.d = d;
    lat.nodes = nodes;
    lat.radius = radius;
    lat.strides.assign(static_cast<size_t>(d + 1), 0);
    lat.total = 1;
    for (int a = d; a >= 0; --a) {
        lat.strides[static_cast<size_t>(a)] = lat.total;
        lat.total *= nodes;
    }
    if (lat.total > 4'000'000)
        throw error(errc::depth_exceeded, "stencil lattice too large for depth " + std::to_string(k));

    auto node_point = [&](long long flat, double& tt, Vec& xx) {
        long long rest = flat;
        int off_t = static_cast<int>(rest / lat.strides[0]) - radius;
        rest %= lat.strides[0];
        tt = t + off_t * ht;
        xx = x;
        for (int i = 0; i < d; ++i) {
            int off = static_cast<int>(rest / lat.strides[static_cast<size_t>(i + 1)]) - radius;
            rest %= lat.strides[static_cast<size_t>(i + 1)];
            xx[i] += off * hx;
        }
    };

    std::vector<double> g(static_cast<size_t>(lat.total));
    std::vector<Vec> vel(static_cast<size_t>(lat.total));
    for (long long ix = 0; ix < lat.total; ++ix) {
        double tt;
        Vec xx;
        node_point(ix, tt, xx);
        if (domain && !domain->contains(tt, xx))
            throw error(errc::domain_exceeded, "stencil node outside solution domain");
        if (!(tt > 0)) throw error(errc::domain_exceeded, "stencil node at non-positive time");
        g[static_cast<size_t>(ix)] = field(tt, xx);
        vel[static_cast<size_t>(ix)] = advect(tt, xx);
    }

    std::vector<double> next(static_cast<size_t>(lat.total), 0.0);
    std::vector<int> off(static_cast<size_t>(d + 1), 0);
    for (int level = 1; level <= k; ++level) {
        const int core = radius - level * half; // remaining valid half-width
        // iterate all nodes with |offset| <= core in every axis
        std::fill(off.begin(), off.end(), -core);
        while (true) {
            long long ix = lat.index(off);
            double dt_term, adv;
            if (cfg.order == 2) {
                dt_term = (g[ix + lat.strides[0]] - g[ix - lat.strides[0]]) / (2.0 * ht);
            } else {
                // pair symmetric samples first: even profiles cancel exactly
                double d1 = g[ix + lat.strides[0]] - g[ix - lat.strides[0]];
                double d2 = g[ix + 2 * lat.strides[0]] - g[ix - 2 * lat.strides[0]];
                dt_term = (8.0 * d1 - d2) / (12.0 * ht);
            }
            adv = 0.0;
            for (int i = 0; i < d; ++i) {
                long long s = lat.strides[static_cast<size_t>(i + 1)];
                double dxi;
                if (cfg.order == 2) {
                    dxi = (g[ix + s] - g[ix - s]) / (2.0 * hx);
                } else {
                    double d1 = g[ix + s] - g[ix - s];
                    double d2 = g[ix + 2 * s] - g[ix - 2 * s];
                    dxi = (8.0 * d1 - d2) / (12.0 * hx);
                }
                adv += vel[static_cast<size_t>(ix)][i] * dxi;
            }
            next[static_cast<size_t>(ix)] = dt_term + adv;

            int a = d;
            while (a >= 0 && off[static_cast<size_t>(a)] == core) {
                off[static_cast<size_t>(a)] = -core;
                --a;
            }
            if (a < 0) break;
            ++off[static_cast<size_t>(a)];
        }
        std::swap(g, next);
    }
    std::vector<int> center(static_cast<size_t>(d + 1), 0);
    return g[static_cast<size_t>(lat.index(center))];
}

/// Vector version: D^k v evaluated componentwise with v advecting itself.
inline Vec material_derivative_fd(const FluidSolution& sol, double t, const Vec& x, int k,
                                  StencilConfig cfg = {}) {
    Vec out{};
    for (int c = 0; c < sol.dim; ++c) {
        auto comp = [&sol, c](double tt, const Vec& xx) { return sol.velocity(tt, xx)[c]; };
        out[c] = material_derivative_fd_scalar(comp, sol.velocity, t, x, sol.dim, k, cfg,
                                               &sol.domain);
    }
    return out;
}

/// Evaluates the exact affine iterate at a point: D^k v = A_k(tau) x + B_k(tau).
inline Vec affine_iterate_eval(const AffineFlow& flow, int k, double t, const Vec& x, int d) {
    AffineFlow it = material_derivative_affine(flow, k);
    double tau = t + flow.t_offset;
    Vec out{};
    double a = it.A.eval(tau);
    for (int i = 0; i < d; ++i) out[i] = a * x[i] + it.B[i].eval(tau);
    return out;
}

} // namespace cfl
