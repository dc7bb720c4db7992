#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wam/common.hpp"

namespace wam {

// Least-squares power-law fit in log-log coordinates.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0; // log-scale intercept
    double r_squared = 0.0;
    double range_lo = 0.0, range_hi = 0.0; // swept-parameter range
    bool accepted() const { return r_squared > 0.999; }
};

inline ExponentFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_loglog: need >= 2 paired samples");
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(ys[i]))
            throw std::invalid_argument("fit_loglog: nonpositive or non-finite sample");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
    ExponentFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = syy - sxy * sxy / sxx;
    // A constant sample set is a perfect slope-0 fit, not a zero-R^2 one; the
    // threshold absorbs rounding noise in the log of a constant value.
    const double flat = 1e-20 * static_cast<double>(n) * (1.0 + my * my);
    f.r_squared = syy <= flat ? 1.0 : std::max(0.0, 1.0 - ssr / syy);
    f.range_lo = xs.front();
    f.range_hi = xs.back();
    return f;
}

// Fit the growth exponent of fn over [lo, hi] sampled at n log-spaced points.
inline ExponentFit lambda_exponent(const std::function<double(double)>& fn, double lo, double hi,
                                   int n = 25) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("lambda_exponent: bad range");
    if (n < 2) throw std::invalid_argument("lambda_exponent: need n >= 2");
    std::vector<double> xs(n), ys(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo * std::exp(step * i);
        ys[i] = fn(xs[i]);
    }
    return fit_loglog(xs, ys);
}

} // namespace wam
