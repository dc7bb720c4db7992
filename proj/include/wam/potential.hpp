#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wam/amalgam.hpp"
#include "wam/common.hpp"
#include "wam/fft.hpp"
#include "wam/grid.hpp"
#include "wam/spectral.hpp"

namespace wam {

// Random potential with prescribed spatial roughness: modes up to N/4 with
// amplitudes (1+|k|)^{-s-1/2}, so the profile sits in H^sigma exactly for
// sigma < s, under a fixed compact envelope.
struct PotentialSpec {
    double alpha = 2.0;    // time integrability exponent of the norm bound
    double p = 4.0;        // outer spatial exponent of the norm bound
    double sobolev_s = 0.3;
    int dim = 1;
    std::uint64_t seed = 1;
    bool real_valued = true;

    void validate() const {
        if (std::isinf(alpha) || !(alpha >= 1.0))
            throw std::invalid_argument("potential: alpha must lie in [1, inf)");
        require_exponent(p);
        if (!(inv_exp(p) < 1.0 / dim))
            throw std::invalid_argument("potential: needs p > dim");
        if (inv_exp(alpha) + dim * inv_exp(p) > 1.0 + 1e-12)
            throw std::invalid_argument("potential: scaling 1/alpha + dim/p exceeds 1");
        if (!(sobolev_s > 0.5 - inv_exp(p) - 1e-12))
            throw std::invalid_argument("potential: sobolev_s too small for the target space");
    }
};

struct TimeGrid {
    double horizon = 1.0; // signed; negative runs backward
    int steps = 64;

    double dt() const { return horizon / steps; }
    double time_at(int m) const { return dt() * m; }
    void validate() const {
        if (steps < 1) throw std::invalid_argument("time grid: needs steps >= 1");
        if (!(std::abs(horizon) > 0.0) || std::isinf(horizon))
            throw std::invalid_argument("time grid: horizon must be finite and nonzero");
    }
};

// Piecewise-constant-in-time potential: frames[m] holds V on [t_m, t_{m+1}).
struct TimePotential {
    TimeGrid tgrid{};
    Grid grid{};
    std::vector<std::vector<cplx>> frames;

    void validate() const {
        tgrid.validate();
        grid.validate();
        if (static_cast<int>(frames.size()) != tgrid.steps)
            throw std::invalid_argument("time potential: frame count != steps");
        for (const auto& fr : frames)
            if (fr.size() != static_cast<std::size_t>(grid.total()))
                throw std::invalid_argument("time potential: frame size != grid size");
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& fr : frames)
            for (const cplx& v : fr) m = std::max(m, std::abs(v));
        return m;
    }

    SampledField frame_field(int m) const {
        if (m < 0 || m >= static_cast<int>(frames.size()))
            throw std::invalid_argument("time potential: frame index out of range");
        SampledField f = make_field(grid);
        f.values = frames[static_cast<std::size_t>(m)];
        return f;
    }
};

namespace detail {

// Deterministic across platforms, unlike the std distributions.
inline double unit_uniform(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// exp(-4 pi^2 i t |xi|^2) over the dual grid.
inline std::vector<cplx> free_multiplier(const Grid& dual, double t) {
    std::vector<cplx> mult(static_cast<std::size_t>(dual.total()));
    int ix[3];
    for (std::size_t idx = 0; idx < mult.size(); ++idx) {
        dual.unravel(idx, ix);
        double xisq = 0.0;
        for (int a = 0; a < dual.dim; ++a) {
            double xi = dual.coord(ix[a]);
            xisq += xi * xi;
        }
        double phase = -4.0 * pi * pi * t * xisq;
        mult[idx] = cplx(std::cos(phase), std::sin(phase));
    }
    return mult;
}

} // namespace detail

// One independent random Fourier profile per time step, drawn sequentially
// from a single stream so the whole object is a function of the seed.
inline TimePotential make_rough_potential(const PotentialSpec& spec, const Grid& grid,
                                          const TimeGrid& tgrid) {
    spec.validate();
    grid.validate();
    tgrid.validate();
    if (grid.dim != 1 || spec.dim != 1)
        throw std::invalid_argument("make_rough_potential: profile construction is 1-d");
    const int n = grid.points;
    const int k_max = n / 4;
    std::mt19937_64 eng(spec.seed);

    std::vector<double> envelope(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = grid.coord(i) * 8.0 / grid.extent;
        envelope[static_cast<std::size_t>(i)] = std::exp(-pi * x * x);
    }

    TimePotential pot;
    pot.tgrid = tgrid;
    pot.grid = grid;
    pot.frames.resize(static_cast<std::size_t>(tgrid.steps));
    std::vector<int> dims{n};
    for (auto& frame : pot.frames) {
        frame.resize(static_cast<std::size_t>(n));
        std::vector<cplx> coef(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        coef[0] = 1.0; // constant mode, fixed phase
        for (int k = 1; k <= k_max; ++k) {
            const double mag = std::pow(1.0 + k, -spec.sobolev_s - 0.5);
            const double th = 2.0 * pi * detail::unit_uniform(eng);
            const cplx ck = mag * cplx(std::cos(th), std::sin(th));
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0; // centered-coordinate twist
            coef[static_cast<std::size_t>(k)] = ck * sgn;
            cplx cm;
            if (spec.real_valued) {
                cm = std::conj(ck);
            } else {
                const double th2 = 2.0 * pi * detail::unit_uniform(eng);
                cm = mag * cplx(std::cos(th2), std::sin(th2));
            }
            coef[static_cast<std::size_t>(n - k)] = cm * sgn;
        }
        detail::dft_inplace(dims, coef.data(), FFTW_BACKWARD);
        for (int i = 0; i < n; ++i) {
            cplx v = coef[static_cast<std::size_t>(i)] * envelope[static_cast<std::size_t>(i)];
            if (spec.real_valued) v = cplx(v.real(), 0.0);
            frame[static_cast<std::size_t>(i)] = v;
        }
    }
    return pot;
}

// Strang splitting for i u_t + Lap u = V u: half free step, full potential
// phase, half free step. Returns steps+1 snapshots including the data.
inline std::vector<SampledField> split_step_evolve(const SampledField& u0,
                                                   const TimePotential& pot) {
    pot.validate();
    if (!(u0.grid == pot.grid)) throw std::invalid_argument("split_step_evolve: grid mismatch");
    const double dt = pot.tgrid.dt();
    const double band = field_bandwidth(u0, 1e-2);
    const double phase_per_step = std::abs(dt) * 4.0 * pi * pi * band * band;
    if (!(phase_per_step < 0.1))
        throw std::invalid_argument(
            "split_step_evolve: free phase per step is " + std::to_string(phase_per_step) +
            "; shrink dt below " +
            std::to_string(0.1 / (4.0 * pi * pi * band * band)));
    const double vstep = std::abs(dt) * pot.max_abs();
    if (!(vstep < 0.5))
        throw std::invalid_argument("split_step_evolve: potential phase per step is " +
                                    std::to_string(vstep) + "; shrink dt");

    const Grid dual = u0.grid.dual();
    const std::vector<cplx> half = detail::free_multiplier(dual, 0.5 * dt);
    auto half_step = [&](SampledField f) {
        SampledField ft = forward_transform(std::move(f));
        for (std::size_t i = 0; i < ft.values.size(); ++i) ft.values[i] *= half[i];
        return inverse_transform(std::move(ft));
    };

    std::vector<SampledField> out;
    out.reserve(static_cast<std::size_t>(pot.tgrid.steps) + 1);
    out.push_back(u0);
    SampledField u = u0;
    for (int m = 0; m < pot.tgrid.steps; ++m) {
        u = half_step(std::move(u));
        const auto& vm = pot.frames[static_cast<std::size_t>(m)];
        for (std::size_t i = 0; i < u.values.size(); ++i)
            u.values[i] *= std::exp(cplx(0.0, -dt) * vm[i]);
        u = half_step(std::move(u));
        out.push_back(u);
    }
    return out;
}

struct PicardResult {
    std::vector<double> diffs;  // sup-in-time L^2 update sizes per iteration
    std::vector<double> ratios; // successive quotients of diffs
    std::vector<SampledField> limit;
    bool contracted = false;
};

// Fixed-point iteration of the integral form
//   u(t) = e^{it Lap} u0 - i int_0^t e^{i(t-s) Lap} (V u)(s) ds,
// with the step-constant potential integrated by the trapezoid rule in s.
inline PicardResult picard_iterate(const SampledField& u0, const TimePotential& pot,
                                   int iterations = 8) {
    pot.validate();
    if (!(u0.grid == pot.grid)) throw std::invalid_argument("picard_iterate: grid mismatch");
    if (iterations < 1) throw std::invalid_argument("picard_iterate: needs iterations >= 1");
    const int m_steps = pot.tgrid.steps;
    const double dt = pot.tgrid.dt();
    const Grid dual = u0.grid.dual();
    const std::size_t total = u0.values.size();

    SampledField u0_hat = forward_transform(u0);
    std::vector<std::vector<cplx>> to_zero(static_cast<std::size_t>(m_steps) + 1);
    std::vector<std::vector<cplx>> from_zero(static_cast<std::size_t>(m_steps) + 1);
    for (int m = 0; m <= m_steps; ++m) {
        from_zero[static_cast<std::size_t>(m)] =
            detail::free_multiplier(dual, pot.tgrid.time_at(m));
        to_zero[static_cast<std::size_t>(m)] =
            detail::free_multiplier(dual, -pot.tgrid.time_at(m));
    }

    auto free_frame = [&](int m) {
        SampledField ft = u0_hat;
        const auto& mult = from_zero[static_cast<std::size_t>(m)];
        for (std::size_t i = 0; i < total; ++i) ft.values[i] *= mult[i];
        return inverse_transform(std::move(ft));
    };

    std::vector<SampledField> v;
    v.reserve(static_cast<std::size_t>(m_steps) + 1);
    for (int m = 0; m <= m_steps; ++m) v.push_back(free_frame(m));

    PicardResult res;
    // Source term at frame m pulled back to t = 0 in frequency space.
    auto pulled_source = [&](int m, const std::vector<SampledField>& frames) {
        SampledField g = make_field(u0.grid);
        const auto& vm = pot.frames[static_cast<std::size_t>(std::min(m, m_steps - 1))];
        const auto& fm = frames[static_cast<std::size_t>(m)].values;
        for (std::size_t i = 0; i < total; ++i) g.values[i] = vm[i] * fm[i];
        SampledField gh = forward_transform(std::move(g));
        const auto& mult = to_zero[static_cast<std::size_t>(m)];
        for (std::size_t i = 0; i < total; ++i) gh.values[i] *= mult[i];
        return gh;
    };

    for (int it = 0; it < iterations; ++it) {
        std::vector<SampledField> w;
        w.reserve(static_cast<std::size_t>(m_steps) + 1);
        w.push_back(v[0]);
        std::vector<cplx> cum(total, cplx(0.0, 0.0));
        for (int m = 1; m <= m_steps; ++m) {
            // Trapezoid over [t_{m-1}, t_m]; V is constant there, u is not.
            SampledField gl = pulled_source(m - 1, v);
            SampledField gr_src = make_field(u0.grid);
            {
                const auto& vm = pot.frames[static_cast<std::size_t>(m - 1)];
                const auto& fm = v[static_cast<std::size_t>(m)].values;
                for (std::size_t i = 0; i < total; ++i) gr_src.values[i] = vm[i] * fm[i];
            }
            SampledField gr = forward_transform(std::move(gr_src));
            {
                const auto& mult = to_zero[static_cast<std::size_t>(m)];
                for (std::size_t i = 0; i < total; ++i) gr.values[i] *= mult[i];
            }
            for (std::size_t i = 0; i < total; ++i)
                cum[i] += 0.5 * dt * (gl.values[i] + gr.values[i]);
            SampledField wh = u0_hat;
            const auto& mult = from_zero[static_cast<std::size_t>(m)];
            for (std::size_t i = 0; i < total; ++i)
                wh.values[i] = (wh.values[i] - cplx(0.0, 1.0) * cum[i]) * mult[i];
            w.push_back(inverse_transform(std::move(wh)));
        }

        double diff = 0.0;
        for (int m = 0; m <= m_steps; ++m) {
            SampledField d = w[static_cast<std::size_t>(m)];
            const auto& prev = v[static_cast<std::size_t>(m)].values;
            for (std::size_t i = 0; i < total; ++i) d.values[i] -= prev[i];
            diff = std::max(diff, field_l2(d));
        }
        res.diffs.push_back(diff);
        v = std::move(w);
        if (res.diffs.size() >= 2) {
            const double prev = res.diffs[res.diffs.size() - 2];
            if (prev > 0.0) res.ratios.push_back(diff / prev);
        }
        if (diff == 0.0) break;
        const std::size_t nr = res.ratios.size();
        if (nr >= 3 && res.ratios[nr - 1] > 1.0 && res.ratios[nr - 2] > 1.0 &&
            res.ratios[nr - 3] > 1.0)
            throw divergence_error("picard_iterate: iteration diverges", res.ratios.back(),
                                   0.5 * pot.tgrid.horizon);
    }
    res.limit = std::move(v);
    res.contracted = res.diffs.back() == 0.0 ||
                     (!res.ratios.empty() && res.ratios.back() < 1.0);
    return res;
}

// Ratio || f h ||_{W(FL^r, L^{r'})} / (||f||_{W(FL^{p'}, L^p)} ||h||_{W(FL^{q'}, L^q)})
// for exponents tied by 1/p + 1/q = 1/r'.
inline double multiplication_check(const SampledField& f, const SampledField& h, double p,
                                   double q, double r,
                                   const WindowSpec& window = WindowSpec::make_gaussian(1.0)) {
    require_exponent(p);
    require_exponent(q);
    require_exponent(r);
    if (std::abs(inv_exp(p) + inv_exp(q) - (1.0 - inv_exp(r))) > 1e-12)
        throw std::invalid_argument("multiplication_check: exponents must satisfy the scaling");
    if (!(f.grid == h.grid)) throw std::invalid_argument("multiplication_check: grid mismatch");
    SampledField fh = f;
    for (std::size_t i = 0; i < fh.values.size(); ++i) fh.values[i] *= h.values[i];
    const double nfh =
        amalgam_norm(fh, {LocalKind::fourier_lebesgue, r, conj_exp(r), window});
    if (nfh == 0.0) return 0.0;
    const double nf = amalgam_norm(f, {LocalKind::fourier_lebesgue, conj_exp(p), p, window});
    const double nh = amalgam_norm(h, {LocalKind::fourier_lebesgue, conj_exp(q), q, window});
    if (!(nf > 0.0) || !(nh > 0.0))
        throw std::invalid_argument("multiplication_check: zero factor norm");
    return nfh / (nf * nh);
}

} // namespace wam
