#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace wam {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// Thrown when a sampled computation cannot represent the requested object on
// the given grid; carries parameters that would suffice.
struct resolution_error : std::runtime_error {
    double suggested_extent = 0.0;
    double suggested_points = 0.0;
    resolution_error(const std::string& what, double extent, double points)
        : std::runtime_error(what), suggested_extent(extent), suggested_points(points) {}
};

// Thrown when a fixed-point iteration fails to contract.
struct divergence_error : std::runtime_error {
    double ratio = 0.0;
    double suggested_horizon = 0.0;
    divergence_error(const std::string& what, double r, double horizon)
        : std::runtime_error(what), ratio(r), suggested_horizon(horizon) {}
};

// 1/p with the convention 1/inf = 0.
inline double inv_exp(double p) {
    if (std::isinf(p)) return 0.0;
    if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive or inf");
    return 1.0 / p;
}

// Conjugate exponent p': 1/p + 1/p' = 1.
inline double conj_exp(double p) {
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return inf;
    if (!(p > 1.0)) throw std::invalid_argument("conjugate exponent needs p >= 1");
    return p / (p - 1.0);
}

inline void require_exponent(double p, double lo = 1.0) {
    if (std::isinf(p)) return;
    if (!(p >= lo) || std::isnan(p)) throw std::invalid_argument("exponent out of range");
}

// || exp(-pi |x|^2) ||_{L^p(R^d)} = p^{-d/(2p)}, with the p = inf limit 1.
inline double gaussian_lp_norm(double p, int dim) {
    require_exponent(p);
    if (std::isinf(p)) return 1.0;
    return std::pow(p, -0.5 * dim / p);
}

} // namespace wam
