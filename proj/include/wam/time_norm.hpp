#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wam/amalgam.hpp"
#include "wam/common.hpp"
#include "wam/grid.hpp"
#include "wam/window.hpp"

namespace wam {

// Two-level norm in time, W(L^{q1}, L^{q2}), of a nonnegative scalar series
// on a uniform grid. The series is treated as compactly supported (zero
// outside its sample range, no periodic wrap); the translation lattice runs
// over the sample times extended by the window cutoff on both sides.
struct MixedTimeSpec {
    double inner_q = 2.0;
    double outer_q = 2.0;
    WindowSpec window{};
};

namespace detail {

inline double check_uniform_dt(const std::vector<double>& times) {
    if (times.size() < 2) throw std::invalid_argument("time norm: need >= 2 samples");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw std::invalid_argument("time norm: non-increasing time grid");
    for (std::size_t j = 1; j < times.size(); ++j) {
        double d = times[j] - times[j - 1];
        if (std::abs(d - dt) > 1e-9 * dt)
            throw std::invalid_argument("time norm: time grid is not uniform");
    }
    return dt;
}

} // namespace detail

inline double time_mixed_norm(const std::vector<double>& times, const std::vector<double>& vals,
                              const MixedTimeSpec& spec) {
    require_exponent(spec.inner_q);
    require_exponent(spec.outer_q);
    if (times.size() != vals.size())
        throw std::invalid_argument("time_mixed_norm: size mismatch");
    const double dt = detail::check_uniform_dt(times);
    for (double v : vals)
        if (!(v >= 0.0)) throw std::invalid_argument("time_mixed_norm: negative value");

    const double cut = spec.window.cutoff();
    const long m = static_cast<long>(times.size());
    const long pad = static_cast<long>(std::ceil(cut / dt)) + 1;
    const double iq1 = inv_exp(spec.inner_q), iq2 = inv_exp(spec.outer_q);

    double outer_sum = 0.0, outer_max = 0.0;
    for (long yi = -pad; yi < m + pad; ++yi) {
        const double y = times[0] + yi * dt;
        const long j0 = std::max<long>(0, yi - pad), j1 = std::min<long>(m - 1, yi + pad);
        double inner_sum = 0.0, inner_max = 0.0;
        for (long j = j0; j <= j1; ++j) {
            const double w = spec.window.value(times[j] - y);
            if (w == 0.0) continue;
            const double a = vals[j] * w;
            if (iq1 > 0.0)
                inner_sum += std::pow(a, spec.inner_q);
            else
                inner_max = std::max(inner_max, a);
        }
        const double local =
            iq1 > 0.0 ? std::pow(inner_sum * dt, iq1) : inner_max;
        if (iq2 > 0.0)
            outer_sum += std::pow(local, spec.outer_q);
        else
            outer_max = std::max(outer_max, local);
    }
    return iq2 > 0.0 ? std::pow(outer_sum * dt, iq2) : outer_max;
}

// Plain L^q of the series with Riemann weight dt^{1/q}.
inline double time_lq_norm(const std::vector<double>& times, const std::vector<double>& vals,
                           double q) {
    require_exponent(q);
    if (times.size() != vals.size()) throw std::invalid_argument("time_lq_norm: size mismatch");
    const double dt = detail::check_uniform_dt(times);
    const double iq = inv_exp(q);
    if (iq == 0.0) {
        double mx = 0.0;
        for (double v : vals) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double s = 0.0;
    for (double v : vals) s += std::pow(std::abs(v), q);
    return std::pow(s * dt, iq);
}

// Duality-pairing stress test: |<F, G>| in L^2_t L^2_x against the product
// of the dual mixed norms W(L^inf, L^q)_t X and W(L^1, L^{q'})_t X'. The two
// spatial specs must be conjugate in both exponents and share the local kind.
struct PairingSpec {
    double time_q = 2.0;       // outer time exponent for F; G gets its conjugate
    AmalgamSpec space_f{};     // spatial norm for F
    AmalgamSpec space_g{};     // spatial norm for G (conjugate exponents)
    WindowSpec time_window{};
};

inline double holder_pairing_check(const std::vector<double>& times,
                                   const std::vector<SampledField>& F,
                                   const std::vector<SampledField>& G,
                                   const PairingSpec& spec) {
    require_exponent(spec.time_q);
    if (F.size() != times.size() || G.size() != times.size())
        throw std::invalid_argument("holder_pairing_check: frame count mismatch");
    if (spec.space_f.kind != spec.space_g.kind ||
        std::abs(inv_exp(spec.space_f.p) + inv_exp(spec.space_g.p) - 1.0) > 1e-12 ||
        std::abs(inv_exp(spec.space_f.q) + inv_exp(spec.space_g.q) - 1.0) > 1e-12)
        throw std::invalid_argument("holder_pairing_check: spatial exponents not conjugate");
    const double dt = detail::check_uniform_dt(times);

    const Grid& g = F.front().grid;
    double hd = 1.0;
    for (int a = 0; a < g.dim; ++a) hd *= g.step();
    cplx pairing = 0.0;
    std::vector<double> nf(times.size()), ng(times.size());
    for (std::size_t m = 0; m < times.size(); ++m) {
        if (!(F[m].grid == g) || !(G[m].grid == g))
            throw std::invalid_argument("holder_pairing_check: grid mismatch");
        cplx s = 0.0;
        for (std::size_t i = 0; i < F[m].values.size(); ++i)
            s += F[m].values[i] * std::conj(G[m].values[i]);
        pairing += s * hd * dt;
        nf[m] = amalgam_norm(F[m], spec.space_f);
        ng[m] = amalgam_norm(G[m], spec.space_g);
    }

    MixedTimeSpec tf{inf, spec.time_q, spec.time_window};
    MixedTimeSpec tg{1.0, conj_exp(spec.time_q), spec.time_window};
    const double denom = time_mixed_norm(times, nf, tf) * time_mixed_norm(times, ng, tg);
    if (denom == 0.0) throw std::invalid_argument("holder_pairing_check: zero norm");
    return std::abs(pairing) / denom;
}

} // namespace wam
