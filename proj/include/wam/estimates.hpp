#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wam/common.hpp"
#include "wam/gaussian.hpp"
#include "wam/parallel.hpp"
#include "wam/quadrature.hpp"
#include "wam/window.hpp"

namespace wam {

// Exponent triple for the fixed-time bound: the propagator maps
// W(FL^s, L^{r'}) to W(FL^{s'}, L^r) with an explicit t-envelope, subject to
// 1/s = 1/r + (2/q)(1/2 - 1/r), 2 <= q, r, s <= inf.
struct FixedTimeSpec {
    double s = 2.0, r = 2.0, q = 2.0;
    int dim = 1;

    static FixedTimeSpec from_qr(double q, double r, int dim) {
        require_exponent(q, 2.0);
        require_exponent(r, 2.0);
        FixedTimeSpec spec;
        spec.q = q;
        spec.r = r;
        spec.dim = dim;
        double is = inv_exp(r) + 2.0 * inv_exp(q) * (0.5 - inv_exp(r));
        spec.s = is > 0.0 ? 1.0 / is : inf;
        spec.validate();
        return spec;
    }

    void validate() const {
        require_exponent(q, 2.0);
        require_exponent(r, 2.0);
        require_exponent(s, 2.0);
        if (dim < 1) throw std::invalid_argument("FixedTimeSpec: dim < 1");
        double lhs = inv_exp(s);
        double rhs = inv_exp(r) + 2.0 * inv_exp(q) * (0.5 - inv_exp(r));
        if (std::abs(lhs - rhs) > 1e-12)
            throw std::invalid_argument("FixedTimeSpec: exponent relation violated");
    }
};

// || K_t ||_{W(FL^p, L^inf)} for the free kernel K_t = f_{4 pi i t}; the
// closed form already carries the |4 pi t|^{-d/2} kernel prefactor.
inline double kernel_amalgam_norm(double t, double p, int dim) {
    if (t == 0.0) throw std::invalid_argument("kernel_amalgam_norm: t == 0");
    return exact_chirp_amalgam_norm(4.0 * pi * t, p, dim);
}

// Decay/blow-up envelope |t|^{d(2/q-1)(1-2/r)} (1+t^2)^{d(1/4-1/q)(1-2/r)}.
inline double fixed_time_envelope(double t, const FixedTimeSpec& spec) {
    if (t == 0.0) throw std::invalid_argument("fixed_time_envelope: t == 0");
    const double one_m = 1.0 - 2.0 * inv_exp(spec.r);
    const double e1 = spec.dim * (2.0 * inv_exp(spec.q) - 1.0) * one_m;
    const double e2 = spec.dim * (0.25 - inv_exp(spec.q)) * one_m;
    return std::pow(std::abs(t), e1) * std::pow(1.0 + t * t, e2);
}

// LHS / (envelope * RHS) for real Gaussian data, all three factors from the
// closed forms. Bounded uniformly in (t, data width) when the exponent
// relation holds.
inline double fixed_time_ratio(const GaussianState& u0, double t, const FixedTimeSpec& spec) {
    spec.validate();
    if (t == 0.0) throw std::invalid_argument("fixed_time_ratio: t == 0");
    if (u0.dim != spec.dim) throw std::invalid_argument("fixed_time_ratio: dimension mismatch");
    if (!(u0.c.real() > 0.0) || u0.c.imag() != 0.0)
        throw std::invalid_argument("fixed_time_ratio: needs real Gaussian data");
    const double a = 1.0 / u0.c.real(); // f-family parameter of the data
    const double sp = conj_exp(spec.s);
    const double lhs = exact_flq_lr_norm(a, 4.0 * pi * t, sp, spec.r, spec.dim);
    const double rhs = exact_flq_lr_norm(a, 0.0, spec.s, conj_exp(spec.r), spec.dim);
    return lhs / (fixed_time_envelope(t, spec) * rhs);
}

// ---------------------------------------------------------------------------
// Admissible exponent region for the two-level space-time bound.

struct RegionQuery {
    double q1 = 2.0, r1 = 2.0, q2 = 2.0, r2 = 2.0;
    int dim = 1;
};

struct Admissibility {
    bool admissible = true;
    std::vector<std::string> reasons;
};

namespace detail {
constexpr double region_eps = 1e-9;
}

// Constraints on the first-layer pair (q1, r1) alone.
inline bool index1_ok(double q1, double r1, int dim, std::vector<std::string>* reasons = nullptr) {
    bool ok = true;
    auto fail = [&](const char* why) {
        ok = false;
        if (reasons) reasons->emplace_back(why);
    };
    if (!(q1 >= 1.0)) fail("q1 < 1");
    if (!(r1 >= 1.0)) fail("r1 < 1");
    const double iq = inv_exp(q1), ir = inv_exp(r1);
    if (2.0 * iq + dim * ir < 0.5 * dim - detail::region_eps)
        fail("first-layer scaling bound 2/q1 + d/r1 >= d/2 fails");
    if (std::isinf(r1) && dim == 2) fail("(r1, d) = (inf, 2) excluded");
    if (dim >= 3 && ir < (dim - 2.0) / (2.0 * dim) - detail::region_eps)
        fail("r1 > 2d/(d-2) cap");
    return ok;
}

// Constraints on the second-layer pair (q2, r2) alone.
inline bool index2_ok(double q2, double r2, int dim, std::vector<std::string>* reasons = nullptr) {
    bool ok = true;
    auto fail = [&](const char* why) {
        ok = false;
        if (reasons) reasons->emplace_back(why);
    };
    if (!(q2 >= 2.0)) fail("q2 < 2");
    if (!(r2 >= 2.0)) fail("r2 < 2");
    const double iq = inv_exp(q2), ir = inv_exp(r2);
    if (2.0 * iq + dim * ir > 0.5 * dim + detail::region_eps)
        fail("second-layer scaling bound 2/q2 + d/r2 <= d/2 fails");
    if (std::isinf(r2) && dim == 2) fail("(r2, d) = (inf, 2) excluded");
    return ok;
}

inline Admissibility is_admissible(const RegionQuery& query) {
    Admissibility a;
    if (query.dim < 1) throw std::invalid_argument("is_admissible: dim < 1");
    for (double e : {query.q1, query.r1, query.q2, query.r2})
        if (!(e >= 1.0)) {
            a.admissible = false;
            a.reasons.emplace_back("exponent out of [1, inf]");
            return a;
        }
    index1_ok(query.q1, query.r1, query.dim, &a.reasons);
    index2_ok(query.q2, query.r2, query.dim, &a.reasons);
    if (inv_exp(query.r1) < inv_exp(query.r2) - detail::region_eps)
        a.reasons.emplace_back("r1 > r2");
    a.admissible = a.reasons.empty();
    return a;
}

// ---------------------------------------------------------------------------
// Space-time mixed norm of the evolved Gaussian against ||u0||_{L^2}.
//
// The spatial profile t -> ||e^{itLap} u0||_{W(L^{r1}, L^{r2})} is evaluated
// from the closed forms (no grid propagation); the two-level time norm uses a
// Gaussian window of width 1, Gauss-Legendre panels on a geometric ladder for
// the inner integral, and a Riemann sum with step 1/16 for the outer layer.
// The profile is truncated to t in [-T, T].

namespace detail {

inline std::vector<double> refine_breaks(std::vector<double> pts, double max_width) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        out.push_back(pts[i]);
        const double w = pts[i + 1] - pts[i];
        const int extra = static_cast<int>(std::floor(w / max_width));
        for (int k = 1; k <= extra; ++k) out.push_back(pts[i] + w * k / (extra + 1));
    }
    out.push_back(pts.back());
    return out;
}

} // namespace detail

inline double strichartz_ratio(const GaussianState& u0, const RegionQuery& query, double horizon) {
    Admissibility adm = is_admissible(query);
    if (!adm.admissible)
        throw std::invalid_argument("strichartz_ratio: inadmissible exponents: " +
                                    adm.reasons.front());
    if (!(horizon > 0.0)) throw std::invalid_argument("strichartz_ratio: horizon <= 0");
    if (u0.dim != query.dim) throw std::invalid_argument("strichartz_ratio: dimension mismatch");
    if (!(u0.c.real() > 0.0) || u0.c.imag() != 0.0)
        throw std::invalid_argument("strichartz_ratio: needs real Gaussian data");

    const double T = horizon;
    const WindowSpec window = WindowSpec::make_gaussian(1.0);
    const double cut = window.cutoff();
    const double inner_scale = 1.0 / (16.0 * pi * u0.c.real());
    const double iq1 = inv_exp(query.q1), iq2 = inv_exp(query.q2);

    auto phi = [&](double t) {
        GaussianState ut = free_evolve_gaussian(u0, t);
        return std::abs(ut.amplitude) *
               exact_lr1_lr2_norm(ut.c.real(), ut.c.imag(), query.r1, query.r2, u0.dim);
    };

    auto inner = [&](double y) {
        const double a = std::max(-T, y - cut), b = std::min(T, y + cut);
        if (!(b > a)) return 0.0;
        if (iq1 == 0.0) {
            return sup_scan([&](double t) { return phi(t) * window.value(t - y); }, a, b, 200,
                            {y, 0.0});
        }
        auto breaks = detail::refine_breaks(geometric_breaks(a, b, inner_scale), 1.0);
        double v = integrate_panels(
            [&](double t) { return std::pow(phi(t) * window.value(t - y), query.q1); }, breaks);
        return std::pow(v, iq1);
    };

    const double dy = 1.0 / 16.0;
    const long ny = 2 * static_cast<long>(std::ceil((T + cut) / dy)) + 1;
    std::vector<double> local(ny);
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t i) {
        local[i] = inner(-T - cut + dy * static_cast<double>(i));
    });
    double mixed;
    if (iq2 == 0.0) {
        mixed = 0.0;
        for (double v : local) mixed = std::max(mixed, v);
    } else {
        double s = 0.0;
        for (double v : local) s += std::pow(v, query.q2);
        mixed = std::pow(s * dy, iq2);
    }
    return mixed / state_l2_norm(u0);
}

} // namespace wam
