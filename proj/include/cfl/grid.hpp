#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cfl/core.hpp"

namespace cfl {

inline std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw error(errc::invalid_argument, "linspace needs at least one point");
    std::vector<double> v;
    v.reserve(static_cast<size_t>(count));
    if (count == 1) {
        v.push_back(lo);
        return v;
    }
    for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
    return v;
}

/// Sampling window for residual grids: a time axis and one axis per spatial
/// dimension. Product grids beyond max_points are subsampled deterministically
/// from the given seed.
struct GridSpec {
    int dim = 1;
    std::vector<double> t;
    std::array<std::vector<double>, 3> x;
    size_t max_points = 10000;
    std::uint64_t seed = 1;
    std::string description;

    /// Parses "t=2:6:50,x=-10:10:100" (x applies to every axis; x1=..,x2=..,x3=..
    /// override individually; "a:b:n" is an inclusive linspace, a single number
    /// is a one-point axis).
    static GridSpec parse(const std::string& text, int dim) {
        GridSpec g;
        g.dim = dim;
        g.description = text;
        auto parse_axis = [](const std::string& spec) {
            auto c1 = spec.find(':');
            if (c1 == std::string::npos) return std::vector<double>{std::stod(spec)};
            auto c2 = spec.find(':', c1 + 1);
            if (c2 == std::string::npos)
                throw error(errc::invalid_argument, "axis spec needs lo:hi:count, got " + spec);
            double lo = std::stod(spec.substr(0, c1));
            double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
            int n = std::stoi(spec.substr(c2 + 1));
            return linspace(lo, hi, n);
        };
        size_t pos = 0;
        bool saw_t = false, saw_x = false;
        std::array<bool, 3> saw_xi{};
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            pos = comma == std::string::npos ? text.size() : comma + 1;
            auto eq = piece.find('=');
            if (eq == std::string::npos)
                throw error(errc::invalid_argument, "grid piece needs key=value: " + piece);
            std::string key = piece.substr(0, eq);
            std::string val = piece.substr(eq + 1);
            try {
                if (key == "t") {
                    g.t = parse_axis(val);
                    saw_t = true;
                } else if (key == "x") {
                    auto axis = parse_axis(val);
                    for (int i = 0; i < dim; ++i)
                        if (!saw_xi[static_cast<size_t>(i)]) g.x[static_cast<size_t>(i)] = axis;
                    saw_x = true;
                } else if (key == "x1" || key == "x2" || key == "x3") {
                    int i = key[1] - '1';
                    if (i >= dim)
                        throw error(errc::invalid_argument, key + " exceeds dimension");
                    g.x[static_cast<size_t>(i)] = parse_axis(val);
                    saw_xi[static_cast<size_t>(i)] = true;
                    saw_x = true;
                } else {
                    throw error(errc::invalid_argument, "unknown grid key: " + key);
                }
            } catch (const std::invalid_argument&) {
                throw error(errc::invalid_argument, "bad number in grid spec: " + piece);
            }
        }
        if (!saw_t || !saw_x)
            throw error(errc::invalid_argument, "grid spec needs both t= and x= axes");
        for (int i = 0; i < dim; ++i)
            if (g.x[static_cast<size_t>(i)].empty())
                throw error(errc::invalid_argument, "missing axis x" + std::to_string(i + 1));
        return g;
    }

    json to_json() const {
        json j;
        j["dim"] = dim;
        j["description"] = description;
        j["t_points"] = t.size();
        for (int i = 0; i < dim; ++i)
            j["x" + std::to_string(i + 1) + "_points"] = x[static_cast<size_t>(i)].size();
        j["max_points"] = max_points;
        j["seed"] = seed;
        return j;
    }
};

struct GridPoint {
    double t;
    Vec x;
};

/// Materializes the product grid, keeping only points accepted by `keep`
/// (domain membership including stencil margins). Oversized grids are
/// subsampled without replacement, deterministically from grid.seed.
inline std::vector<GridPoint> sample_grid(const GridSpec& grid,
                                          const std::function<bool(double, const Vec&)>& keep) {
    std::array<size_t, 3> nx{1, 1, 1};
    size_t total = grid.t.size();
    for (int i = 0; i < grid.dim; ++i) {
        nx[static_cast<size_t>(i)] = grid.x[static_cast<size_t>(i)].size();
        total *= nx[static_cast<size_t>(i)];
    }
    auto point_at = [&](size_t flat) {
        GridPoint p{};
        size_t rest = flat;
        for (int i = grid.dim - 1; i >= 0; --i) {
            size_t n = nx[static_cast<size_t>(i)];
            p.x[i] = grid.x[static_cast<size_t>(i)][rest % n];
            rest /= n;
        }
        p.t = grid.t[rest];
        return p;
    };

    std::vector<GridPoint> out;
    if (total <= grid.max_points) {
        out.reserve(total);
        for (size_t f = 0; f < total; ++f) {
            GridPoint p = point_at(f);
            if (!keep || keep(p.t, p.x)) out.push_back(p);
        }
        return out;
    }
    // deterministic subsample: distinct flat indices in increasing order
    std::mt19937_64 rng(grid.seed);
    std::uniform_int_distribution<size_t> pick(0, total - 1);
    std::vector<size_t> idx;
    idx.reserve(grid.max_points * 2);
    size_t guard = 0;
    while (idx.size() < grid.max_points && guard < grid.max_points * 50) {
        idx.push_back(pick(rng));
        ++guard;
        if (idx.size() == grid.max_points) {
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        }
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    out.reserve(idx.size());
    for (size_t f : idx) {
        GridPoint p = point_at(f);
        if (!keep || keep(p.t, p.x)) out.push_back(p);
    }
    return out;
}

} // namespace cfl
