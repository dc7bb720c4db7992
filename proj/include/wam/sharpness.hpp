#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wam/amalgam.hpp"
#include "wam/common.hpp"
#include "wam/fit.hpp"
#include "wam/gaussian.hpp"
#include "wam/quadrature.hpp"
#include "wam/spectral.hpp"
#include "wam/time_norm.hpp"

namespace wam {

// One necessity claim: a predicted scaling exponent, the fitted exponent, and
// whether the measured growth actually breaks the bound under test.
struct SharpnessVerdict {
    std::string claim;
    double predicted = 0.0;
    ExponentFit measured{};
    double tolerance = 0.05;
    bool pass = false;               // fitted slope matches the prediction
    bool violation_detected = false; // growth direction that defeats the bound
    double threshold = 0.0;          // boundary value of the swept exponent
};

namespace detail {

inline SharpnessVerdict make_verdict(const std::string& claim, double predicted,
                                     const ExponentFit& fit, double tol) {
    SharpnessVerdict v;
    v.claim = claim;
    v.predicted = predicted;
    v.measured = fit;
    v.tolerance = tol;
    v.pass = fit.accepted() && std::abs(fit.slope - predicted) < tol;
    return v;
}

// Closed form of int_R (mu + y^2)^g dy = c_g mu^{1/2 + g}; finite iff g < -1/2.
inline double half_power_integral_const(double g) {
    if (!(g < -0.5)) throw std::invalid_argument("integral constant: exponent >= -1/2");
    return std::exp(0.5 * std::log(pi) + std::lgamma(-g - 0.5) - std::lgamma(-g));
}

} // namespace detail

// q with 2/q + d/r = d/2; defined for d(1/2 - 1/r) in (0, 1].
inline double strichartz_time_exponent(double r, int dim) {
    require_exponent(r);
    const double gap = dim * (0.5 - inv_exp(r));
    if (!(gap > 0.0) || gap > 1.0 + 1e-12)
        throw std::invalid_argument("strichartz_time_exponent: r out of range");
    return 2.0 / gap;
}

// --- first fixed-time family -----------------------------------------------
// Ratio of the evolved-data norm in W(FL^{r'}, L^r) to the data norm in
// W(FL^r, L^{r'}) along the width family exp(-pi lambda^2 |x|^2).

inline double prop1_ratio(double lambda, double t, double r, int dim) {
    const double a = 1.0 / (lambda * lambda);
    return exact_flq_lr_norm(a, 4.0 * pi * t, conj_exp(r), r, dim) /
           exact_flq_lr_norm(a, 0.0, r, conj_exp(r), dim);
}

// Small-width sweep at fixed t: slope 2d(1/2 - 1/r); a negative slope means
// the ratio blows up as lambda -> 0+, which forces r >= 2.
inline SharpnessVerdict prop1_small_lambda_verdict(double r, int dim, double t0 = 1.0,
                                                   double tol = 0.05) {
    ExponentFit fit = lambda_exponent([&](double l) { return prop1_ratio(l, t0, r, dim); }, 1e-3,
                                      1e-2, 25);
    const double predicted = 2.0 * dim * (0.5 - inv_exp(r));
    SharpnessVerdict v = detail::make_verdict("ratio-small-width", predicted, fit, tol);
    v.threshold = 2.0;
    v.violation_detected = fit.slope < -tol;
    return v;
}

// Coupled sweep t = 1/lambda, lambda -> inf: slope 2d(1/2 - 1/r) again; a
// positive slope bounds how fast the t -> 0 envelope must blow up.
inline SharpnessVerdict prop1_coupled_verdict(double r, int dim, double tol = 0.05) {
    ExponentFit fit = lambda_exponent(
        [&](double l) { return prop1_ratio(l, 1.0 / l, r, dim); }, 1e2, 1e3, 25);
    const double predicted = 2.0 * dim * (0.5 - inv_exp(r));
    SharpnessVerdict v = detail::make_verdict("ratio-coupled", predicted, fit, tol);
    v.threshold = 2.0;
    v.violation_detected = fit.slope > tol;
    return v;
}

// Large-t decay of the unit Gaussian in W(FL^{r'}, L^r): slope -d(1/2 - 1/r).
inline SharpnessVerdict prop1_decay_verdict(double r, int dim, double tol = 0.05) {
    ExponentFit fit = lambda_exponent(
        [&](double t) { return exact_flq_lr_norm(1.0, 4.0 * pi * t, conj_exp(r), r, dim); }, 1e2,
        1e3, 25);
    const double predicted = -dim * (0.5 - inv_exp(r));
    SharpnessVerdict v = detail::make_verdict("decay-large-t", predicted, fit, tol);
    v.threshold = 2.0;
    return v;
}

inline std::vector<SharpnessVerdict> check_prop1(double r, int dim, double tol = 0.05) {
    return {prop1_small_lambda_verdict(r, dim, 1.0, tol), prop1_coupled_verdict(r, dim, tol),
            prop1_decay_verdict(r, dim, tol)};
}

// --- space-time family against ||u0||_{L^2} --------------------------------
// Closed-form lower bounds for the mixed norm of the evolved width family,
// compared against the data-side slope -d/2.

// Outer time exponent beta, small-lambda regime. Needs beta > q/2 so the
// profile integral converges.
inline SharpnessVerdict prop2_beta_verdict(double beta, double r, int dim, double tol = 0.05) {
    require_exponent(beta);
    const double q = strichartz_time_exponent(r, dim);
    const double g = -beta * 0.5 * dim * (0.5 - inv_exp(r));
    const double cg = detail::half_power_integral_const(g); // throws if beta <= q/2
    const double drp = dim * (1.0 - inv_exp(r));
    auto lower = [&](double l) {
        const double mu = std::pow(l, -4.0);
        return std::pow(l, -drp) * std::pow(cg * std::pow(mu, 0.5 + g), 1.0 / beta);
    };
    ExponentFit fit = lambda_exponent(lower, 1e-3, 1e-2, 25);
    const double predicted = -drp - 2.0 / beta + 2.0 * dim * (0.5 - inv_exp(r));
    SharpnessVerdict v = detail::make_verdict("time-outer-lower", predicted, fit, tol);
    v.threshold = q;
    v.violation_detected = fit.slope < -0.5 * dim - tol;
    return v;
}

// Inner time exponent alpha, large-lambda regime. Needs alpha > q/4 so the
// profile integral converges.
inline SharpnessVerdict prop2_alpha_verdict(double alpha, double r, int dim, double tol = 0.05) {
    require_exponent(alpha);
    const double q = strichartz_time_exponent(r, dim);
    const double g = -alpha * dim * (0.5 - inv_exp(r));
    if (!(g < -0.5))
        throw std::invalid_argument("prop2_alpha_verdict: alpha too small, integral diverges");
    const double drp = dim * (1.0 - inv_exp(r));
    auto lower = [&](double l) {
        const double mu = l * l;
        double integral = 2.0 * integrate_panels(
                                    [&](double t) { return std::pow(1.0 / mu + t * t, g); },
                                    geometric_breaks(0.0, 0.5, 1.0 / mu));
        return std::pow(l, -drp) * std::pow(integral, 1.0 / alpha);
    };
    ExponentFit fit = lambda_exponent(lower, 1e2, 1e3, 25);
    const double predicted = -drp - 1.0 / alpha + 2.0 * dim * (0.5 - inv_exp(r));
    SharpnessVerdict v = detail::make_verdict("time-inner-lower", predicted, fit, tol);
    v.threshold = 0.5 * q;
    v.violation_detected = fit.slope > -0.5 * dim + tol;
    return v;
}

// Verdicts at the two thresholds beta = q and alpha = q/2; both boundary
// slopes equal -d/2 exactly.
inline std::vector<SharpnessVerdict> check_prop2(double r, int dim, double tol = 0.05) {
    const double q = strichartz_time_exponent(r, dim);
    return {prop2_beta_verdict(q, r, dim, tol), prop2_alpha_verdict(0.5 * q, r, dim, tol)};
}

// --- fixed-time two-exponent ordering ---------------------------------------
// Ratio of || e^{it0 Lap} data ||_{W(L^{r1}, L^{r2})} to the data norm in the
// dual pair, along the width family; slope d(1/r2 - 1/r1) as lambda -> inf,
// positive exactly when r1 > r2 (the forbidden ordering).

inline SharpnessVerdict check_pd1(double r1, double r2, double t0, int dim, double tol = 0.05) {
    if (t0 == 0.0) throw std::invalid_argument("check_pd1: t0 == 0");
    auto ratio = [&](double l) {
        return evolved_rescaled_norm(l, t0, r1, r2, dim) /
               exact_lr1_lr2_norm(l * l, 0.0, conj_exp(r1), conj_exp(r2), dim);
    };
    ExponentFit fit = lambda_exponent(ratio, 1e2, 1e3, 25);
    const double predicted = dim * (inv_exp(r2) - inv_exp(r1));
    SharpnessVerdict v = detail::make_verdict("local-global-ordering", predicted, fit, tol);
    v.threshold = r2;
    v.violation_detected = fit.slope > tol;
    return v;
}

// Large-t decay of the fixed-data norm in W(L^{r1}, L^{r2}): slope d(1/r2 - 1/2).
inline SharpnessVerdict pd1_decay_verdict(double r1, double r2, int dim, double tol = 0.05) {
    ExponentFit fit = lambda_exponent(
        [&](double t) { return evolved_rescaled_norm(1.0, t, r1, r2, dim); }, 1e2, 1e3, 25);
    SharpnessVerdict v =
        detail::make_verdict("decay-large-t-local", dim * (inv_exp(r2) - 0.5), fit, tol);
    v.threshold = 2.0;
    return v;
}

// --- two-level space-time lower bounds --------------------------------------

// Inner layer (q1, r1): quadrature of the exact profile over one unit window,
// lambda -> inf; slope -(2/q1 + d/r1), to be compared against -d/2.
inline SharpnessVerdict pd2_inner_verdict(double q1, double r1, double r2, int dim,
                                          double tol = 0.05) {
    require_exponent(q1);
    auto lower = [&](double l) {
        auto profile = [&](double t) { return evolved_rescaled_norm(l, t, r1, r2, dim); };
        if (inv_exp(q1) == 0.0)
            return sup_scan(profile, -0.5, 0.5, 256, {0.0});
        double v = integrate_panels([&](double t) { return std::pow(profile(t), q1); },
                                    geometric_breaks(-0.5, 0.5, 1.0 / (64.0 * l * l)));
        return std::pow(v, inv_exp(q1));
    };
    ExponentFit fit = lambda_exponent(lower, 1e2, 1e3, 25);
    const double predicted = -(2.0 * inv_exp(q1) + dim * inv_exp(r1));
    SharpnessVerdict v = detail::make_verdict("spacetime-inner-lower", predicted, fit, tol);
    v.threshold = 0.5 * dim;
    v.violation_detected = fit.slope > -0.5 * dim + tol;
    return v;
}

// Outer layer (q2, r2): closed-form minorization, lambda -> 0+; slope
// -(2/q2 + d/r2) against -d/2.
inline SharpnessVerdict pd2_outer_verdict(double q2, double r2, int dim, double tol = 0.05) {
    require_exponent(q2);
    const double iq2 = inv_exp(q2);
    const double g = iq2 > 0.0 ? q2 * 0.5 * dim * (inv_exp(r2) - 0.5) : 0.0;
    double cg = 1.0;
    if (iq2 > 0.0) cg = detail::half_power_integral_const(g);
    auto lower = [&](double l) {
        const double mu = std::pow(l, -4.0);
        const double amp = std::pow(l, dim * inv_exp(r2) - dim);
        if (iq2 == 0.0)
            return amp * std::pow(mu, 0.5 * dim * (inv_exp(r2) - 0.5));
        return amp * std::pow(cg * std::pow(mu, 0.5 + g), 1.0 / q2);
    };
    ExponentFit fit = lambda_exponent(lower, 1e-3, 1e-2, 25);
    const double predicted = -(2.0 * iq2 + dim * inv_exp(r2));
    SharpnessVerdict v = detail::make_verdict("spacetime-outer-lower", predicted, fit, tol);
    v.threshold = 0.5 * dim;
    v.violation_detected = fit.slope < -0.5 * dim - tol;
    return v;
}

inline std::vector<SharpnessVerdict> check_pd2(double q1, double q2, double r1, double r2, int dim,
                                               double tol = 0.05) {
    return {pd2_inner_verdict(q1, r1, r2, dim, tol), pd2_outer_verdict(q2, r2, dim, tol)};
}

// --- bump-train growth experiment -------------------------------------------
// Truncated single-bump profiles placed at widely separated times; the
// two-level time norm then grows exactly like N^{1/q2}, while the L^2 norm of
// the superposed data grows at most like sqrt(N+1).

struct NBumpResult {
    std::vector<int> counts;
    std::vector<double> mixed_norms;
    double truncation_radius = 0.0;
    double l2_ratio = 0.0;       // grid check: ||sum||_2 / (sqrt(N+1) ||f||_2), N = 8
    double l2_ratio_exact = 0.0; // same from inner-product closed forms
    double block_rel_err = 0.0;  // grid amalgam norm of one dispersed bump vs closed form
    SharpnessVerdict verdict;
};

namespace detail {

// Radius at which the dispersed bump amplitude has fallen below 1/N_max.
inline int bump_truncation_radius(int n_max, int dim) {
    const double target = std::pow(static_cast<double>(n_max), -1.0);
    // (1 + (4 pi R)^2)^{-d/4} <= target
    const double s = std::pow(target, -4.0 / dim) - 1.0;
    return static_cast<int>(std::ceil(std::sqrt(std::max(0.0, s)) / (4.0 * pi)));
}

} // namespace detail

inline NBumpResult nbump_experiment(double q1, double q2, double r1, double r2,
                                    std::vector<int> counts = {4, 8, 16}, double tol = 0.1) {
    require_exponent(q1);
    require_exponent(q2);
    if (counts.empty()) throw std::invalid_argument("nbump_experiment: no counts");
    const int dim = 1;
    NBumpResult out;
    out.counts = counts;
    int n_max = 0;
    for (int n : counts) n_max = std::max(n_max, n);
    const int R = detail::bump_truncation_radius(n_max, dim);
    out.truncation_radius = R;
    const int sep = 2 * R + 2;

    auto profile = [&](double s) {
        return std::abs(s) <= R ? evolved_rescaled_norm(1.0, s, r1, r2, dim) : 0.0;
    };

    const double dt = 1.0 / 64.0;
    MixedTimeSpec tspec{q1, q2, WindowSpec::make_boxcar(0.5, 0.5)};
    std::vector<double> xs, ys;
    for (int n : counts) {
        const double t_lo = -(R + 1.0), t_hi = (n - 1.0) * sep + R + 1.0;
        const long m = static_cast<long>(std::llround((t_hi - t_lo) / dt)) + 1;
        std::vector<double> times(m), vals(m);
        for (long j = 0; j < m; ++j) {
            const double t = t_lo + dt * j;
            times[j] = t;
            const long blk = std::lround(t / sep);
            vals[j] = (blk >= 0 && blk < n) ? profile(t - blk * static_cast<double>(sep)) : 0.0;
        }
        const double norm = time_mixed_norm(times, vals, tspec);
        out.mixed_norms.push_back(norm);
        xs.push_back(n);
        ys.push_back(norm);
    }
    ExponentFit fit = fit_loglog(xs, ys);
    SharpnessVerdict v = detail::make_verdict("bump-count-growth", inv_exp(q2), fit, tol);
    v.threshold = 2.0;
    v.violation_detected = fit.slope > 0.5 + 0.05;
    out.verdict = v;

    // L^2 side, N = 8: superpose backward-evolved unit Gaussians and compare
    // against sqrt(N+1) ||f||_2 on a grid plus the closed-form Gram sum. The
    // separation here must beat the dispersive cross-term budget
    //   (4 pi sep)^{-d/2} (n^2 - n) ||f||_1^2 <= ||f||_2^2,
    // which for the unit Gaussian in d = 1 (||f||_1 = 1, ||f||_2^2 = 2^{-1/2})
    // needs sep >= 2 (n^2 - n)^2 / (4 pi) -- far larger than the mixed-norm
    // truncation separation.
    {
        const int n = 8;
        const double pairs = static_cast<double>(n) * n - n;
        const double sep8 = std::ceil(2.0 * pairs * pairs / (4.0 * pi));
        GaussianState f;
        std::vector<GaussianState> states;
        for (int j = 0; j < n; ++j)
            states.push_back(free_evolve_gaussian(f, -static_cast<double>(j) * sep8));
        Grid g;
        g.dim = 1;
        g.extent = 320000.0;
        g.points = 1 << 21;
        SampledField u0 = sample_sum(states, g);
        const double bound = std::sqrt(n + 1.0) * state_l2_norm(f);
        out.l2_ratio = field_l2(u0) / bound;
        cplx gram = 0.0;
        for (const GaussianState& a : states)
            for (const GaussianState& b : states) gram += state_inner(a, b);
        out.l2_ratio_exact = std::sqrt(std::abs(gram)) / bound;
    }

    // Engine fidelity on one dispersed bump: grid amalgam norm against the
    // closed form at the truncation edge.
    {
        GaussianState f;
        GaussianState v_edge = free_evolve_gaussian(f, static_cast<double>(R));
        Grid g;
        g.dim = 1;
        g.extent = 2048.0;
        g.points = 1 << 15;
        SampledField fld = sample(v_edge, g);
        AmalgamSpec spec{LocalKind::lebesgue, 2.0, 2.0, WindowSpec::make_gaussian(1.0)};
        const double numeric = amalgam_norm(fld, spec);
        const double exact = evolved_rescaled_norm(1.0, R, 2.0, 2.0, dim);
        out.block_rel_err = std::abs(numeric - exact) / exact;
    }
    return out;
}

} // namespace wam
