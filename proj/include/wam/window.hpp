#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "wam/common.hpp"
#include "wam/grid.hpp"

namespace wam {

// Separable window used to localize a field before taking a local norm.
// gaussian: per axis exp(-pi x^2 / width^2), truncated at |x| > 3.75*width
// (relative size there ~1e-19). boxcar: indicator of the half-open interval
// [center - width, center + width) per axis.
struct WindowSpec {
    enum class Kind { gaussian, boxcar };
    Kind kind = Kind::gaussian;
    double width = 1.0;
    double center = 0.0;
    bool unit_l2 = false; // rescale so the h-weighted discrete l2 norm is 1

    static WindowSpec make_gaussian(double w = 1.0, bool unit = false) {
        if (!(w > 0.0)) throw std::invalid_argument("window: width must be positive");
        WindowSpec s;
        s.kind = Kind::gaussian;
        s.width = w;
        s.unit_l2 = unit;
        return s;
    }

    static WindowSpec make_boxcar(double half_width, double center = 0.0, bool unit = false) {
        if (!(half_width > 0.0)) throw std::invalid_argument("window: width must be positive");
        WindowSpec s;
        s.kind = Kind::boxcar;
        s.width = half_width;
        s.center = center;
        s.unit_l2 = unit;
        return s;
    }

    double cutoff() const {
        if (kind == Kind::gaussian) return 3.75 * width;
        return std::max(std::abs(center - width), std::abs(center + width));
    }

    // Per-axis factor at displacement x from the translation point.
    double value(double x) const {
        if (kind == Kind::gaussian) {
            if (std::abs(x) > 3.75 * width) return 0.0;
            return std::exp(-pi * x * x / (width * width));
        }
        return (x >= center - width && x < center + width) ? 1.0 : 0.0;
    }

    std::string name() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s(%g)", kind == Kind::gaussian ? "gaussian" : "boxcar",
                      width);
        return std::string(buf);
    }
};

namespace detail {

// Per-axis window samples indexed by wrapped displacement, plus the list of
// displacement indices inside the support.
struct window_table {
    std::vector<double> by_disp; // size N, entry j corresponds to disp (j - N/2)
    std::vector<int> support;    // j with by_disp[j] != 0
    double scale = 1.0;
};

inline window_table build_window(const WindowSpec& w, const Grid& g) {
    g.validate();
    const int n = g.points;
    const double h = g.step();
    window_table t;
    t.by_disp.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double x = (j - n / 2) * h;
        double v = w.value(x);
        if (v != 0.0) {
            t.by_disp[static_cast<std::size_t>(j)] = v;
            t.support.push_back(j);
        }
    }
    if (t.support.empty())
        throw std::invalid_argument("window: support contains no grid point");
    if (w.unit_l2) {
        double axis_sq = 0.0;
        for (int j : t.support) {
            double v = t.by_disp[static_cast<std::size_t>(j)];
            axis_sq += v * v;
        }
        axis_sq *= h;
        t.scale = std::pow(axis_sq, -0.5 * g.dim); // separable: per-axis factors multiply
    }
    return t;
}

} // namespace detail
} // namespace wam
