#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wam/common.hpp"
#include "wam/fft.hpp"
#include "wam/grid.hpp"
#include "wam/parallel.hpp"
#include "wam/window.hpp"

namespace wam {

enum class LocalKind { lebesgue, fourier_lebesgue };

inline const char* local_kind_name(LocalKind k) {
    return k == LocalKind::lebesgue ? "L" : "FL";
}

// ||f||_{W(B, L^q)} where B is L^p or FL^p of the windowed slice f . g(. - y):
// inner norm in x (or frequency), outer L^q over the translation y running on
// the grid lattice with weight h^d. Translations wrap periodically.
struct AmalgamSpec {
    LocalKind kind = LocalKind::fourier_lebesgue;
    double p = 2.0;
    double q = 2.0;
    WindowSpec window{};
};

// All pairwise (p, q) norms of one field and window, sharing the windowed
// transforms: values[pi * qs.size() + qi].
struct NormTable {
    std::vector<double> ps, qs;
    std::vector<double> values;
    double at(std::size_t pi, std::size_t qi) const { return values[pi * qs.size() + qi]; }
};

namespace detail {

// Local norms at one translation index, one entry of out per exponent in ps.
// scratch must have f.values.size() entries; it is clobbered.
inline void local_norms_at(const SampledField& f, LocalKind kind,
                           const std::vector<double>& ps, const window_table& wt,
                           std::size_t y_idx, double field_peak, std::vector<cplx>& scratch,
                           double* out) {
    const Grid& g = f.grid;
    const int n = g.points;
    const int d = g.dim;
    const double h = g.step();
    int iy[3], ix[3], jd[3], jx[3];
    g.unravel(y_idx, iy);

    const std::size_t nsup = wt.support.size();
    std::size_t combos = 1;
    for (int a = 0; a < d; ++a) combos *= nsup;

    // Windowed slice over the support box around y; indices wrap.
    double peak = 0.0;
    std::vector<std::pair<std::size_t, cplx>> slice;
    slice.reserve(combos);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        double wv = wt.scale;
        for (int a = d - 1; a >= 0; --a) {
            jd[a] = wt.support[rem % nsup];
            rem /= nsup;
            wv *= wt.by_disp[static_cast<std::size_t>(jd[a])];
        }
        for (int a = 0; a < d; ++a) ix[a] = (iy[a] + jd[a] - n / 2 + n) % n;
        std::size_t idx = g.ravel(ix);
        cplx v = f.values[idx] * wv;
        peak = std::max(peak, std::abs(v));
        slice.emplace_back(idx, v);
    }

    if (peak < 1e-15 * field_peak) {
        for (std::size_t pi = 0; pi < ps.size(); ++pi) out[pi] = 0.0;
        return;
    }

    if (kind == LocalKind::lebesgue) {
        double meas = std::pow(h, d);
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            double p = ps[pi];
            if (std::isinf(p)) {
                out[pi] = peak;
            } else {
                double s = 0.0;
                for (auto& [idx, v] : slice) s += std::pow(std::abs(v), p);
                out[pi] = std::pow(s * meas, 1.0 / p);
            }
        }
        return;
    }

    std::fill(scratch.begin(), scratch.end(), cplx(0.0));
    for (auto& [idx, v] : slice) scratch[idx] = v;
    // Centered transform of scratch in place: shift, DFT, shift.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t idx = 0; idx < scratch.size(); ++idx) {
            g.unravel(idx, ix);
            if (ix[0] >= n / 2) continue;
            for (int a = 0; a < d; ++a) jx[a] = (ix[a] + n / 2) % n;
            std::swap(scratch[idx], scratch[g.ravel(jx)]);
        }
        if (pass == 0) {
            std::vector<int> dims(static_cast<std::size_t>(d), n);
            dft_inplace(dims, scratch.data(), FFTW_FORWARD);
        }
    }
    const double hs = std::pow(h, d);                 // forward transform scale
    const double dmeas = std::pow(1.0 / g.extent, d); // dual grid measure
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        double p = ps[pi];
        if (std::isinf(p)) {
            double m = 0.0;
            for (const cplx& v : scratch) m = std::max(m, std::abs(v));
            out[pi] = hs * m;
        } else {
            double s = 0.0;
            for (const cplx& v : scratch) s += std::pow(std::abs(v), p);
            out[pi] = hs * std::pow(s * dmeas, 1.0 / p);
        }
    }
}

} // namespace detail

inline NormTable amalgam_norm_table(const SampledField& f, LocalKind kind,
                                    const std::vector<double>& ps,
                                    const std::vector<double>& qs, const WindowSpec& window) {
    f.grid.validate();
    if (ps.empty() || qs.empty())
        throw std::invalid_argument("amalgam_norm_table: empty exponent list");
    for (double p : ps) require_exponent(p);
    for (double q : qs) require_exponent(q);
    const detail::window_table wt = detail::build_window(window, f.grid);
    const std::size_t ny = f.grid.total();
    const std::size_t np = ps.size();
    const double field_peak = field_max_abs(f);

    std::vector<double> locals(ny * np, 0.0);
    parallel_for(ny, [&](std::size_t y) {
        thread_local std::vector<cplx> scratch;
        if (kind == LocalKind::fourier_lebesgue && scratch.size() != f.values.size())
            scratch.assign(f.values.size(), cplx(0.0));
        detail::local_norms_at(f, kind, ps, wt, y, field_peak, scratch, &locals[y * np]);
    });

    NormTable t;
    t.ps = ps;
    t.qs = qs;
    t.values.assign(np * qs.size(), 0.0);
    const double ymeas = std::pow(f.grid.step(), f.grid.dim);
    for (std::size_t pi = 0; pi < np; ++pi) {
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
            double q = qs[qi];
            double v;
            if (std::isinf(q)) {
                v = 0.0;
                for (std::size_t y = 0; y < ny; ++y) v = std::max(v, locals[y * np + pi]);
            } else {
                double s = 0.0;
                for (std::size_t y = 0; y < ny; ++y) s += std::pow(locals[y * np + pi], q);
                v = std::pow(s * ymeas, 1.0 / q);
            }
            t.values[pi * qs.size() + qi] = v;
        }
    }
    return t;
}

inline double local_norm_at(const SampledField& f, const AmalgamSpec& spec, std::size_t y_idx) {
    f.grid.validate();
    require_exponent(spec.p);
    const detail::window_table wt = detail::build_window(spec.window, f.grid);
    std::vector<cplx> scratch;
    if (spec.kind == LocalKind::fourier_lebesgue) scratch.assign(f.values.size(), cplx(0.0));
    double out = 0.0;
    std::vector<double> ps{spec.p};
    detail::local_norms_at(f, spec.kind, ps, wt, y_idx, field_max_abs(f), scratch, &out);
    return out;
}

inline std::vector<double> local_norm_profile(const SampledField& f, const AmalgamSpec& spec) {
    f.grid.validate();
    require_exponent(spec.p);
    const detail::window_table wt = detail::build_window(spec.window, f.grid);
    const std::size_t ny = f.grid.total();
    const double field_peak = field_max_abs(f);
    std::vector<double> prof(ny, 0.0);
    std::vector<double> ps{spec.p};
    parallel_for(ny, [&](std::size_t y) {
        thread_local std::vector<cplx> scratch;
        if (spec.kind == LocalKind::fourier_lebesgue && scratch.size() != f.values.size())
            scratch.assign(f.values.size(), cplx(0.0));
        detail::local_norms_at(f, spec.kind, ps, wt, y, field_peak, scratch, &prof[y]);
    });
    return prof;
}

inline double amalgam_norm(const SampledField& f, const AmalgamSpec& spec) {
    NormTable t = amalgam_norm_table(f, spec.kind, {spec.p}, {spec.q}, spec.window);
    return t.at(0, 0);
}

} // namespace wam
