#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wam/common.hpp"
#include "wam/fft.hpp"
#include "wam/gaussian.hpp"
#include "wam/grid.hpp"

namespace wam {

namespace detail {

inline int next_pow2(double x) {
    int n = 2;
    while (n < x && n < (1 << 28)) n <<= 1;
    return n;
}

// In-place centered shift: index i -> (i + N/2) mod N on every axis. For even
// N this is an involution, and it is its own inverse shift.
inline void center_shift(SampledField& f) {
    const int n = f.grid.points;
    int ix[3], jx[3];
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        f.grid.unravel(idx, ix);
        if (ix[0] >= n / 2) continue;
        for (int a = 0; a < f.grid.dim; ++a) jx[a] = (ix[a] + n / 2) % n;
        std::swap(f.values[idx], f.values[f.grid.ravel(jx)]);
    }
}

} // namespace detail

// Relative spatial tail of exp(-pi c |x|^2) at the grid edge must be below
// 1e-14, and the relative frequency tail at the Nyquist edge below 1e-12,
// otherwise the sampled field misrepresents the state.
inline void check_sampling(const GaussianState& u, const Grid& g) {
    g.validate();
    if (!(u.c.real() > 0.0)) throw std::invalid_argument("sample: needs Re c > 0");
    if (u.dim != g.dim) throw std::invalid_argument("sample: dimension mismatch");
    const double re_c = u.c.real();
    const double half = 0.5 * g.extent;
    if (pi * re_c * half * half < 14.0 * std::log(10.0)) {
        // pad the suggestion so it clears the same check with margin
        double want_l = 2.02 * std::sqrt(14.0 * std::log(10.0) / (pi * re_c));
        double want_n = detail::next_pow2(g.points * want_l / g.extent);
        throw resolution_error("sample: spatial tail exceeds 1e-14 at grid edge", want_l,
                               want_n);
    }
    const double gamma = re_c / std::norm(u.c); // frequency-side decay rate
    const double nyq = 0.5 * g.points / g.extent;
    if (pi * gamma * nyq * nyq < 12.0 * std::log(10.0)) {
        double want_b = 1.01 * std::sqrt(12.0 * std::log(10.0) / (pi * gamma));
        double want_n = detail::next_pow2(2.0 * want_b * g.extent);
        throw resolution_error("sample: frequency tail exceeds 1e-12 at Nyquist", g.extent,
                               want_n);
    }
}

inline SampledField sample(const GaussianState& u, const Grid& g) {
    check_sampling(u, g);
    SampledField f = make_field(g);
    int ix[3];
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        g.unravel(idx, ix);
        double xsq = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            double x = g.coord(ix[a]);
            xsq += x * x;
        }
        f.values[idx] = state_eval(u, xsq);
    }
    return f;
}

inline SampledField sample_sum(const std::vector<GaussianState>& us, const Grid& g) {
    if (us.empty()) throw std::invalid_argument("sample_sum: empty state list");
    SampledField f = sample(us[0], g);
    for (std::size_t j = 1; j < us.size(); ++j) {
        SampledField fj = sample(us[j], g);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += fj.values[i];
    }
    return f;
}

// Smallest grid on which every listed state samples cleanly and windowed
// local transforms with window width up to `window_width` stay resolved.
inline Grid suggest_grid(const std::vector<GaussianState>& us, double window_width = 1.0) {
    if (us.empty()) throw std::invalid_argument("suggest_grid: empty state list");
    const double c14 = 14.0 * std::log(10.0) / pi;
    double l_need = 0.0, b_need = 0.0;
    for (const auto& u : us) {
        if (!(u.c.real() > 0.0)) throw std::invalid_argument("suggest_grid: needs Re c > 0");
        l_need = std::max(l_need, 2.0 * std::sqrt(c14 / u.c.real()));
        double gamma = u.c.real() / std::norm(u.c);
        b_need = std::max(b_need, std::sqrt(c14 / gamma));
    }
    double l = l_need + 8.0 * window_width;
    double b = b_need + 4.0 / window_width + 1.0;
    Grid g{us[0].dim, l, detail::next_pow2(2.0 * b * l)};
    g.validate();
    return g;
}

// F(k) = h^d sum_x f(x) exp(-2 pi i x . xi_k) via a centered FFT; the result
// lives on the dual grid. Exact inverse pair with inverse_transform.
inline SampledField forward_transform(SampledField f) {
    f.grid.validate();
    detail::center_shift(f);
    std::vector<int> dims(static_cast<std::size_t>(f.grid.dim), f.grid.points);
    detail::dft_inplace(dims, f.values.data(), FFTW_FORWARD);
    detail::center_shift(f);
    double scale = std::pow(f.grid.step(), f.grid.dim);
    for (cplx& v : f.values) v *= scale;
    f.grid = f.grid.dual();
    return f;
}

inline SampledField inverse_transform(SampledField f) {
    f.grid.validate();
    detail::center_shift(f);
    std::vector<int> dims(static_cast<std::size_t>(f.grid.dim), f.grid.points);
    detail::dft_inplace(dims, f.values.data(), FFTW_BACKWARD);
    detail::center_shift(f);
    // Undo both the missing 1/N^d of the raw transform and the dual measure.
    double scale = std::pow(f.grid.extent / f.grid.points, f.grid.dim);
    for (cplx& v : f.values) v *= scale;
    f.grid = f.grid.dual();
    return f;
}

inline double field_l2(const SampledField& f) {
    double s = 0.0;
    for (const cplx& v : f.values) s += std::norm(v);
    return std::sqrt(s * std::pow(f.grid.step(), f.grid.dim));
}

// Largest |xi| along any axis carrying at least `rel` of the spectral peak.
inline double field_bandwidth(const SampledField& f, double rel = 1e-10) {
    SampledField ft = forward_transform(f);
    double peak = field_max_abs(ft);
    if (peak == 0.0) return 0.0;
    double band = 0.0;
    int ix[3];
    for (std::size_t idx = 0; idx < ft.values.size(); ++idx) {
        if (std::abs(ft.values[idx]) <= rel * peak) continue;
        ft.grid.unravel(idx, ix);
        for (int a = 0; a < ft.grid.dim; ++a)
            band = std::max(band, std::abs(ft.grid.coord(ix[a])));
    }
    return band;
}

// Propagation moves frequency-xi content by 4 pi t xi; beyond extent/2 it
// wraps around the torus and the sampled field stops matching the line.
inline void check_dispersion_cap(const SampledField& f, double t) {
    double band = field_bandwidth(f);
    double travel = 4.0 * pi * std::abs(t) * band;
    if (travel >= 0.5 * f.grid.extent) {
        double want_l = 2.5 * travel * 2.0;
        double want_n = detail::next_pow2(f.grid.points * want_l / f.grid.extent);
        throw resolution_error("dispersion cap: evolved field wraps around the grid",
                               want_l, want_n);
    }
}

// exp(i t Lap): multiply the spectrum by exp(-4 pi^2 i t |xi|^2). Refuses
// fields with significant content on the Nyquist shell (index 0 on any axis),
// where the two half-spectra are aliased together.
inline SampledField free_propagate(const SampledField& f, double t) {
    SampledField ft = forward_transform(f);
    double peak = field_max_abs(ft);
    int ix[3];
    for (std::size_t idx = 0; idx < ft.values.size(); ++idx) {
        ft.grid.unravel(idx, ix);
        bool shell = false;
        for (int a = 0; a < ft.grid.dim; ++a) shell = shell || (ix[a] == 0);
        if (shell && std::abs(ft.values[idx]) > 1e-10 * peak)
            throw resolution_error("free_propagate: spectrum reaches the Nyquist shell",
                                   f.grid.extent, 2.0 * f.grid.points);
    }
    for (std::size_t idx = 0; idx < ft.values.size(); ++idx) {
        ft.grid.unravel(idx, ix);
        double xisq = 0.0;
        for (int a = 0; a < ft.grid.dim; ++a) {
            double xi = ft.grid.coord(ix[a]);
            xisq += xi * xi;
        }
        double phase = -4.0 * pi * pi * t * xisq;
        ft.values[idx] *= cplx(std::cos(phase), std::sin(phase));
    }
    return inverse_transform(std::move(ft));
}

// Periodic convolution with the grid measure: (f * g)(x) = h^d sum_y f(y) g(x-y).
inline SampledField convolve(const SampledField& f, const SampledField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("convolve: grid mismatch");
    SampledField ff = forward_transform(f);
    SampledField gg = forward_transform(g);
    for (std::size_t i = 0; i < ff.values.size(); ++i) ff.values[i] *= gg.values[i];
    return inverse_transform(std::move(ff));
}

} // namespace wam
