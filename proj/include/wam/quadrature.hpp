#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wam/common.hpp"

namespace wam {

// Gauss-Legendre rule on [-1, 1]. Nodes are Newton-refined roots of the
// Legendre polynomial, weights 2 / ((1 - x^2) P_n'(x)^2).
struct QuadRule {
    std::vector<double> nodes, weights;
};

inline const QuadRule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw std::invalid_argument("gauss_legendre: bad order");
    static QuadRule cache[129];
    QuadRule& rule = cache[order];
    if (!rule.nodes.empty()) return rule;
    QuadRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int k = 0; k < order; ++k) {
        double x = std::cos(pi * (k + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= order; ++n) {
                double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        r.nodes[k] = x;
        r.weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    rule = std::move(r);
    return rule;
}

// Single Gauss-Legendre panel over [a, b].
inline double integrate_panel(const std::function<double(double)>& fn, double a, double b,
                              int order = 16) {
    const QuadRule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k)
        s += r.weights[k] * fn(mid + half * r.nodes[k]);
    return s * half;
}

// Composite rule over consecutive breakpoints (must be sorted).
inline double integrate_panels(const std::function<double(double)>& fn,
                               const std::vector<double>& breaks, int order = 16) {
    if (breaks.size() < 2) throw std::invalid_argument("integrate_panels: need >= 2 breakpoints");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] <= breaks[i + 1]))
            throw std::invalid_argument("integrate_panels: breakpoints not sorted");
        if (breaks[i] < breaks[i + 1]) s += integrate_panel(fn, breaks[i], breaks[i + 1], order);
    }
    return s;
}

// Geometric breakpoint ladder for integrands varying on an inner scale within
// [a, b]: 0-anchored doubling from `scale` outward in both directions,
// clipped to the interval.
inline std::vector<double> geometric_breaks(double a, double b, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("geometric_breaks: scale <= 0");
    std::vector<double> pts{a, b};
    if (a < 0.0 && b > 0.0) pts.push_back(0.0);
    for (double s = scale; s < std::max(std::abs(a), std::abs(b)); s *= 2.0) {
        if (s > a && s < b) pts.push_back(s);
        if (-s > a && -s < b) pts.push_back(-s);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Supremum over [a, b]: dense scan followed by a golden-section polish around
// the best sample. Adequate for the smooth unimodal-by-pieces profiles used
// here; extra candidate points can be supplied (e.g. known peaks).
inline double sup_scan(const std::function<double(double)>& fn, double a, double b,
                       int samples = 256, const std::vector<double>& candidates = {}) {
    if (!(b >= a)) throw std::invalid_argument("sup_scan: empty interval");
    if (samples < 2) samples = 2;
    double best = -inf, xbest = a;
    for (int i = 0; i < samples; ++i) {
        double x = a + (b - a) * i / (samples - 1);
        double v = fn(x);
        if (v > best) {
            best = v;
            xbest = x;
        }
    }
    for (double x : candidates) {
        if (x < a || x > b) continue;
        double v = fn(x);
        if (v > best) {
            best = v;
            xbest = x;
        }
    }
    const double step = (b - a) / (samples - 1);
    double lo = std::max(a, xbest - step), hi = std::min(b, xbest + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = fn(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = fn(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

} // namespace wam
