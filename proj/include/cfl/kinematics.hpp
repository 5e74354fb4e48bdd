#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cfl/core.hpp"
#include "cfl/material.hpp"
#include "cfl/parallel.hpp"

namespace cfl {

// ---------------------------------------------------------------------------
// Particle orbits
// ---------------------------------------------------------------------------

/// A traced liquid-particle orbit dx/dt = v(t, x(t)): fixed-step classical
/// RK4, every step recorded. `complete` is false when the orbit left the
/// solution domain and only the valid prefix is returned.
struct Orbit {
    double t_start = 0.0;
    Vec x0{};
    double h = 0.0;
    std::vector<std::pair<double, Vec>> samples;
    bool complete = true;

    const Vec& at_end() const { return samples.back().second; }
};

inline Orbit trace_orbit(const FluidSolution& sol, const Vec& b, double t_start, double t_end,
                         double h) {
    if (!(h > 0) || !(t_end > t_start))
        throw error(errc::invalid_argument, "orbit needs h > 0 and t_end > t_start");
    Orbit orb;
    orb.t_start = t_start;
    orb.x0 = b;
    orb.h = h;
    orb.samples.push_back({t_start, b});

    const int d = sol.dim;
    auto axpy = [d](const Vec& x, double a, const Vec& k) {
        Vec r = x;
        for (int i = 0; i < d; ++i) r[i] += a * k[i];
        return r;
    };
    double t = t_start;
    Vec x = b;
    while (t < t_end - 1e-15 * std::max(1.0, std::abs(t_end))) {
        double step = std::min(h, t_end - t);
        try {
            Vec k1 = sol.velocity(t, x);
            Vec k2 = sol.velocity(t + 0.5 * step, axpy(x, 0.5 * step, k1));
            Vec k3 = sol.velocity(t + 0.5 * step, axpy(x, 0.5 * step, k2));
            Vec k4 = sol.velocity(t + step, axpy(x, step, k3));
            for (int i = 0; i < d; ++i)
                x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        } catch (const error&) {
            orb.complete = false;
            break;
        }
        t += step;
        if (!sol.domain.contains(t, x)) {
            orb.complete = false;
            break;
        }
        orb.samples.push_back({t, x});
    }
    return orb;
}

// ---------------------------------------------------------------------------
// Vorticity / shear / expansion
// ---------------------------------------------------------------------------

/// Velocity-gradient split: antisymmetric vorticity d_j v_i - d_i v_j,
/// traceless shear d_j v_i + d_i v_j - (2/d) delta_ij div v, and the expansion
/// scalar div v. Reassembly: d_j v_i = (vorticity + shear)/2 + delta_ij div/d.
struct KinematicDecomposition {
    int dim = 1;
    double vorticity[3][3] = {};
    double shear[3][3] = {};
    double expansion = 0.0;
    double gradient[3][3] = {};

    double reassembly_error() const {
        double worst = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                double back = 0.5 * vorticity[i][j] + 0.5 * shear[i][j] +
                              (i == j ? expansion / dim : 0.0);
                worst = std::max(worst, std::abs(back - gradient[i][j]));
            }
        return worst;
    }
};

inline KinematicDecomposition kinematic_decomposition(const FluidSolution& sol, double t,
                                                      const Vec& x, StencilConfig cfg = {}) {
    KinematicDecomposition k;
    k.dim = sol.dim;
    for (int j = 0; j < sol.dim; ++j) {
        double h = detail::step_x(cfg, x[j]);
        for (int c = 0; c < sol.dim; ++c) {
            k.gradient[c][j] = detail::central_diff(
                [&](double u) {
                    Vec q = x;
                    q[j] = u;
                    return sol.velocity(t, q)[c];
                },
                x[j], h, cfg.order);
        }
    }
    for (int c = 0; c < sol.dim; ++c) k.expansion += k.gradient[c][c];
    for (int i = 0; i < sol.dim; ++i)
        for (int j = 0; j < sol.dim; ++j) {
            k.vorticity[i][j] = k.gradient[i][j] - k.gradient[j][i];
            k.shear[i][j] = k.gradient[i][j] + k.gradient[j][i] -
                            (i == j ? 2.0 * k.expansion / sol.dim : 0.0);
        }
    return k;
}

// ---------------------------------------------------------------------------
// Mass in a ball
// ---------------------------------------------------------------------------

struct QuadratureConfig {
    int resolution = 256; // cells per axis over the bounding box
};

namespace detail {

inline constexpr double gl4_node[2] = {0.3399810435848563, 0.8611363115940526};
inline constexpr double gl4_weight[2] = {0.6521451548625461, 0.34785484513745385};

/// 4-point Gauss-Legendre on [a,b].
template <typename F>
double gl4(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
        s += gl4_weight[k] * f(mid + half * gl4_node[k]);
        s += gl4_weight[k] * f(mid - half * gl4_node[k]);
    }
    return s * half;
}

} // namespace detail

/// Integral of the density over a ball, on a tensor-product midpoint grid over
/// the bounding box. Cells fully inside use the midpoint rule; boundary cells
/// integrate exactly in the direction closest to the surface normal (the ball
/// chord is computed analytically) with Gauss-Legendre nodes transversely; in
/// two dimensions the transverse integral is additionally split at the points
/// where the chord meets the cell faces, so the integrand is smooth on every
/// piece and the total error is dominated by the interior O(h^2) midpoint
/// term. Summation is in fixed cell order; the result is deterministic.
inline double mass_in_ball(const FluidSolution& sol, const Vec& center, double radius, double t,
                           QuadratureConfig cfg = {}) {
    if (!(radius > 0)) throw error(errc::invalid_argument, "radius must be positive");
    if (cfg.resolution < 2) throw error(errc::invalid_argument, "resolution must be >= 2");
    const int d = sol.dim;
    // the ball must sit inside the spatial domain at time t
    {
        Vec probe = center;
        if (!sol.domain.contains(t, probe))
            throw error(errc::domain_exceeded, "ball center outside the domain");
        for (int i = 0; i < d; ++i) {
            probe = center;
            probe[i] = center[i] - radius * 0.999999;
            if (!sol.domain.contains(t, probe))
                throw error(errc::domain_exceeded, "ball leaves the domain");
            probe[i] = center[i] + radius * 0.999999;
            if (!sol.domain.contains(t, probe))
                throw error(errc::domain_exceeded, "ball leaves the domain");
        }
    }

    const int n = cfg.resolution;
    const double h = 2.0 * radius / n;
    const double r2 = radius * radius;
    long long cells = 1;
    for (int i = 0; i < d; ++i) cells *= n;

    std::vector<double> partial(static_cast<size_t>(cells), 0.0);
    parallel_for(static_cast<size_t>(cells), [&](size_t flat) {
        // cell bounds
        double lo[3], hi[3], cc[3];
        size_t rest = flat;
        for (int i = d - 1; i >= 0; --i) {
            size_t ix = rest % static_cast<size_t>(n);
            rest /= static_cast<size_t>(n);
            lo[i] = center[i] - radius + static_cast<double>(ix) * h;
            hi[i] = lo[i] + h;
            cc[i] = lo[i] + 0.5 * h;
        }
        // classify against the sphere
        double dmin2 = 0.0, dmax2 = 0.0;
        for (int i = 0; i < d; ++i) {
            double lod = lo[i] - center[i], hid = hi[i] - center[i];
            double nearest = std::clamp(0.0, lod, hid);
            dmin2 += nearest * nearest;
            dmax2 += std::max(lod * lod, hid * hid);
        }
        if (dmin2 >= r2) return;
        Vec xc{};
        for (int i = 0; i < d; ++i) xc[i] = cc[i];
        if (dmax2 <= r2) {
            double vol = 1.0;
            for (int i = 0; i < d; ++i) vol *= h;
            partial[flat] = sol.density(t, xc) * vol;
            return;
        }

        // boundary cell: slice along the axis most aligned with the normal
        int axis = 0;
        double best = -1.0;
        for (int i = 0; i < d; ++i) {
            double a = std::abs(cc[i] - center[i]);
            if (a > best) {
                best = a;
                axis = i;
            }
        }
        auto chord = [&](const double* u /* transverse coords, d-1 entries */) {
            double q2 = 0.0;
            int k = 0;
            for (int i = 0; i < d; ++i) {
                if (i == axis) continue;
                double dd = u[k++] - center[i];
                q2 += dd * dd;
            }
            double s2 = r2 - q2;
            if (s2 <= 0.0) return 0.0;
            double s = std::sqrt(s2);
            double a = std::max(lo[axis], center[axis] - s);
            double b = std::min(hi[axis], center[axis] + s);
            if (b <= a) return 0.0;
            // density integrated along the chord
            Vec q = xc;
            int kk = 0;
            for (int i = 0; i < d; ++i) {
                if (i == axis) continue;
                q[i] = u[kk++];
            }
            return detail::gl4(
                [&](double w) {
                    Vec p = q;
                    p[axis] = w;
                    return sol.density(t, p);
                },
                a, b);
        };

        double acc = 0.0;
        if (d == 1) {
            double none = 0.0;
            acc = chord(&none);
        } else if (d == 2) {
            int tr = axis == 0 ? 1 : 0;
            // split the transverse interval where the chord meets the cell
            // faces or leaves the sphere, so each piece is smooth
            std::vector<double> cuts = {lo[tr], hi[tr]};
            auto add_cut = [&](double s2) {
                if (s2 < 0.0) return;
                double q = std::sqrt(s2);
                for (double cand : {center[tr] - q, center[tr] + q})
                    if (cand > lo[tr] && cand < hi[tr]) cuts.push_back(cand);
            };
            double dlo = lo[axis] - center[axis], dhi = hi[axis] - center[axis];
            add_cut(r2 - dlo * dlo);
            add_cut(r2 - dhi * dhi);
            add_cut(r2); // chord shrinks to zero
            std::sort(cuts.begin(), cuts.end());
            for (size_t p = 0; p + 1 < cuts.size(); ++p) {
                if (cuts[p + 1] - cuts[p] <= 0.0) continue;
                acc += detail::gl4([&](double u) { return chord(&u); }, cuts[p], cuts[p + 1]);
            }
        } else {
            int tr[2], k = 0;
            for (int i = 0; i < d; ++i)
                if (i != axis) tr[k++] = i;
            acc = detail::gl4(
                [&](double u0) {
                    return detail::gl4(
                        [&](double u1) {
                            double u[2] = {u0, u1};
                            return chord(u);
                        },
                        lo[tr[1]], hi[tr[1]]);
                },
                lo[tr[0]], hi[tr[0]]);
        }
        partial[flat] = acc;
    });

    double mass = 0.0;
    for (double v : partial) mass += v;
    return mass;
}

} // namespace cfl
