#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wam/common.hpp"

namespace wam {

// f(x) = amplitude * exp(-pi * c * |x|^2) on R^dim. States used as initial
// data need Re c > 0; chirps (Re c = 0, c != 0) are allowed wherever a
// function only manipulates the parameters algebraically.
struct GaussianState {
    cplx amplitude{1.0, 0.0};
    cplx c{1.0, 0.0};
    int dim = 1;
};

inline cplx state_eval(const GaussianState& u, double xsq) {
    return u.amplitude * std::exp(-pi * u.c * xsq);
}

// int_{R^d} exp(-pi a |x|^2) exp(-2 pi i x.z) dx = a^{-d/2} exp(-pi (z.z)/a),
// z.z bilinear (no conjugation), principal branch. Valid for Re a >= 0, a != 0.
inline cplx gauss_integral(cplx a, const std::vector<cplx>& z, int dim) {
    if (a == cplx(0.0)) throw std::invalid_argument("gauss_integral: a == 0");
    if (a.real() < 0.0) throw std::invalid_argument("gauss_integral: Re a < 0");
    if (static_cast<int>(z.size()) != dim)
        throw std::invalid_argument("gauss_integral: z has wrong dimension");
    cplx zz = 0.0;
    for (const cplx& zk : z) zz += zk * zk;
    return std::pow(a, cplx(-0.5 * dim)) * std::exp(-pi * zz / a);
}

inline cplx gauss_integral(cplx a, cplx z, int dim = 1) {
    return gauss_integral(a, std::vector<cplx>(static_cast<std::size_t>(dim), z), dim);
}

// Convolution of two Gaussians: amplitudes multiply by (c1+c2)^{-d/2}, the
// new width parameter is the harmonic combination c1 c2 / (c1 + c2).
inline GaussianState gauss_convolve(const GaussianState& u, const GaussianState& v) {
    if (u.dim != v.dim) throw std::invalid_argument("gauss_convolve: dimension mismatch");
    if (u.c.real() < 0.0 || v.c.real() < 0.0)
        throw std::invalid_argument("gauss_convolve: Re c < 0");
    cplx s = u.c + v.c;
    if (s.real() <= 0.0 && s.imag() == 0.0)
        throw std::invalid_argument("gauss_convolve: c1 + c2 not invertible");
    if (u.c.real() + v.c.real() <= 0.0)
        throw std::invalid_argument("gauss_convolve: needs Re(c1 + c2) > 0");
    GaussianState out;
    out.dim = u.dim;
    out.amplitude = u.amplitude * v.amplitude * std::pow(s, cplx(-0.5 * u.dim));
    out.c = u.c * v.c / s;
    return out;
}

// Schrodinger flow on a Gaussian: exp(i t Lap) keeps the family invariant,
//   c |-> c / (1 + 4 pi i t c),  amplitude |-> amplitude * (1 + 4 pi i t c)^{-d/2}.
// For Re c > 0 the path t |-> 1 + 4 pi i t c never crosses the negative real
// axis, so the principal branch is continuous and the group law is exact.
inline GaussianState free_evolve_gaussian(const GaussianState& u, double t) {
    if (!(u.c.real() > 0.0)) throw std::invalid_argument("free_evolve_gaussian: needs Re c > 0");
    cplx w = 1.0 + cplx(0.0, 4.0 * pi * t) * u.c;
    GaussianState out;
    out.dim = u.dim;
    out.amplitude = u.amplitude * std::pow(w, cplx(-0.5 * u.dim));
    out.c = u.c / w;
    return out;
}

inline double state_l2_norm(const GaussianState& u) {
    if (!(u.c.real() > 0.0)) throw std::invalid_argument("state_l2_norm: needs Re c > 0");
    return std::abs(u.amplitude) * std::pow(2.0 * u.c.real(), -0.25 * u.dim);
}

// <u, v> = int u conj(v).
inline cplx state_inner(const GaussianState& u, const GaussianState& v) {
    if (u.dim != v.dim) throw std::invalid_argument("state_inner: dimension mismatch");
    cplx s = u.c + std::conj(v.c);
    if (!(s.real() > 0.0)) throw std::invalid_argument("state_inner: not integrable");
    return u.amplitude * std::conj(v.amplitude) * std::pow(s, cplx(-0.5 * u.dim));
}

// f_w(x) = w^{-d/2} exp(-pi |x|^2 / w), the normalized family closed under
// the flow: exp(i t Lap) f_w = f_{w + 4 pi i t}. Needs Re w >= 0, w != 0.
inline GaussianState gaussian_f(cplx w, int dim = 1) {
    if (w == cplx(0.0)) throw std::invalid_argument("gaussian_f: w == 0");
    if (w.real() < 0.0) throw std::invalid_argument("gaussian_f: Re w < 0");
    GaussianState out;
    out.dim = dim;
    out.amplitude = std::pow(w, cplx(-0.5 * dim));
    out.c = 1.0 / w;
    return out;
}

// Fundamental solution K_t(x) = (4 pi i t)^{-d/2} exp(i |x|^2 / (4 t)).
inline GaussianState free_kernel(double t, int dim) {
    if (t == 0.0) throw std::invalid_argument("free_kernel: t == 0");
    return gaussian_f(cplx(0.0, 4.0 * pi * t), dim);
}

// || f_{i a} ||_{W(FL^p, L^inf)} with Gaussian window, where f_{ia} is the
// family member (i a)^{-d/2} exp(-pi |x|^2 / (i a)) -- the propagator kernel
// has K_t = f_{4 pi i t}:
//   (1 + a^2)^{(d/2)(1/p - 1/2)} |a|^{-d/p} p^{-d/(2p)},
// the p = inf limit being (1 + a^2)^{-d/4}.
inline double exact_chirp_amalgam_norm(double a, double p, int dim) {
    require_exponent(p);
    if (a == 0.0) throw std::invalid_argument("exact_chirp_amalgam_norm: a == 0");
    double ip = inv_exp(p);
    double v = std::pow(1.0 + a * a, 0.5 * dim * (ip - 0.5));
    if (ip > 0.0) v *= std::pow(std::abs(a), -dim * ip) * std::pow(p, -0.5 * dim * ip);
    return v;
}

// || f_{a+ib} ||_{W(FL^q, L^r)} for the family member
//   f_w(x) = w^{-d/2} exp(-pi |x|^2 / w),  w = a + i b,
// with Gaussian window:
//   q^{-d/(2q)} r^{-d/(2r)} a^{-d/(2r)}
//     * ((a+1)^2 + b^2)^{(d/2)(1/q - 1/2)} * (a(a+1) + b^2)^{(d/2)(1/r - 1/q)}.
// Needs a > 0, or a = 0 with r = inf and b != 0 (the pure chirp limit, where
// the value agrees with exact_chirp_amalgam_norm(b, q, dim)).
inline double exact_flq_lr_norm(double a, double b, double q, double r, int dim) {
    require_exponent(q);
    require_exponent(r);
    double iq = inv_exp(q), ir = inv_exp(r);
    bool chirp_limit = (a == 0.0 && ir == 0.0 && b != 0.0);
    if (!(a > 0.0) && !chirp_limit)
        throw std::invalid_argument("exact_flq_lr_norm: needs a > 0");
    double v = 1.0;
    if (iq > 0.0) v *= std::pow(q, -0.5 * dim * iq);
    if (ir > 0.0) v *= std::pow(r * a, -0.5 * dim * ir);
    double ap1 = a + 1.0;
    v *= std::pow(ap1 * ap1 + b * b, 0.5 * dim * (iq - 0.5));
    v *= std::pow(a * ap1 + b * b, 0.5 * dim * (ir - iq));
    return v;
}

// || exp(-pi (a + i b) |x|^2) ||_{W(L^{r1}, L^{r2})} with Gaussian window:
//   [r1 (a+1)]^{-d/(2 r1)} * ((a+1)/(r2 a))^{d/(2 r2)}.
// Independent of the chirp b because |f| alone enters. Needs a > 0.
inline double exact_lr1_lr2_norm(double a, double /*b*/, double r1, double r2, int dim) {
    require_exponent(r1);
    require_exponent(r2);
    if (!(a > 0.0)) throw std::invalid_argument("exact_lr1_lr2_norm: needs a > 0");
    double ir1 = inv_exp(r1), ir2 = inv_exp(r2);
    double v = 1.0;
    if (ir1 > 0.0) v *= std::pow(r1 * (a + 1.0), -0.5 * dim * ir1);
    if (ir2 > 0.0) v *= std::pow((a + 1.0) / (r2 * a), 0.5 * dim * ir2);
    return v;
}

// || exp(i t Lap) exp(-pi lambda^2 |x|^2) ||_{W(L^{r1}, L^{r2})}, exactly.
inline double evolved_rescaled_norm(double lambda, double t, double r1, double r2, int dim) {
    if (!(lambda > 0.0)) throw std::invalid_argument("evolved_rescaled_norm: lambda <= 0");
    GaussianState u;
    u.c = lambda * lambda;
    u.dim = dim;
    GaussianState ut = free_evolve_gaussian(u, t);
    return std::abs(ut.amplitude) *
           exact_lr1_lr2_norm(ut.c.real(), ut.c.imag(), r1, r2, dim);
}

} // namespace wam
