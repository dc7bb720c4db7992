#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include "wam/gaussian.hpp"

using namespace wam;

namespace {

// Plain trapezoid rule; spectrally accurate for smooth integrands whose tails
// vanish inside [lo, hi].
cplx trapezoid(const std::function<cplx(double)>& fn, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    cplx s = 0.5 * (fn(lo) + fn(hi));
    for (int i = 1; i < n; ++i) s += fn(lo + h * i);
    return s * h;
}

double trapezoid_real(const std::function<double(double)>& fn, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = 0.5 * (fn(lo) + fn(hi));
    for (int i = 1; i < n; ++i) s += fn(lo + h * i);
    return s * h;
}

} // namespace

TEST_CASE("gauss_integral matches quadrature") {
    auto numeric = [](cplx a, cplx z) {
        return trapezoid([&](double x) { return std::exp(-pi * a * x * x - 2.0 * pi * cplx(0.0, 1.0) * x * z); },
                         -20.0, 20.0, 40000);
    };
    CHECK(std::abs(gauss_integral(cplx(1.0), cplx(0.0), 1) - 1.0) < 1e-12);
    CHECK(std::abs(gauss_integral(cplx(2.0), cplx(0.0), 1) - std::pow(2.0, -0.5)) < 1e-12);

    cplx got = gauss_integral(cplx(1.0), cplx(0.0, 0.5), 1);
    CHECK(std::abs(got - std::exp(pi / 4.0)) < 1e-10);
    CHECK(std::abs(got - numeric(1.0, cplx(0.0, 0.5))) < 1e-9);

    cplx a(1.0, 1.0), z(0.7, -0.2);
    CHECK(std::abs(gauss_integral(a, z, 1) - numeric(a, z)) < 1e-10);

    // d = 2 separates into the product of the axis integrals.
    std::vector<cplx> zz{z, cplx(0.3, 0.0)};
    cplx lhs = gauss_integral(a, zz, 2);
    cplx rhs = gauss_integral(a, zz[0], 1) * gauss_integral(a, zz[1], 1);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("gauss_convolve matches quadrature") {
    auto numeric = [](cplx c1, cplx c2, double x) {
        return trapezoid(
            [&](double y) {
                return std::exp(-pi * c1 * y * y) * std::exp(-pi * c2 * (x - y) * (x - y));
            },
            -20.0, 20.0, 40000);
    };
    struct Case {
        cplx c1, c2;
    };
    for (const Case& cs : {Case{1.0, 1.0}, Case{1.0, 2.0}, Case{cplx(1.0, 0.0), cplx(1.0, 2.0)}}) {
        GaussianState a, b;
        a.c = cs.c1;
        b.c = cs.c2;
        GaussianState conv = gauss_convolve(a, b);
        for (double x : {0.0, 0.7}) {
            cplx expect = numeric(cs.c1, cs.c2, x);
            cplx got = state_eval(conv, x * x);
            CHECK(std::abs(got - expect) < 1e-10 * std::abs(expect) + 1e-14);
        }
    }
    GaussianState a, b;
    GaussianState conv = gauss_convolve(a, b);
    CHECK(std::abs(conv.amplitude - std::pow(2.0, -0.5)) < 1e-14);
    CHECK(std::abs(conv.c - cplx(0.5)) < 1e-14);
}

TEST_CASE("free evolution: group law, unitarity, Fourier multiplier") {
    GaussianState u;
    u.amplitude = cplx(0.8, 0.1);
    u.c = cplx(1.5, -0.4);

    GaussianState one = free_evolve_gaussian(free_evolve_gaussian(u, 0.3), 0.45);
    GaussianState two = free_evolve_gaussian(u, 0.75);
    CHECK(std::abs(one.c - two.c) < 1e-12);
    CHECK(std::abs(one.amplitude - two.amplitude) < 1e-12);

    CHECK(std::abs(state_l2_norm(free_evolve_gaussian(u, 2.7)) - state_l2_norm(u)) < 1e-12);

    // hat(u_t)(xi) = hat(u_0)(xi) exp(-4 pi^2 i t xi^2)
    const double t = 0.37;
    GaussianState ut = free_evolve_gaussian(u, t);
    for (double xi : {0.0, 0.3, 1.1}) {
        cplx lhs = ut.amplitude * gauss_integral(ut.c, cplx(xi), 1);
        cplx phase = std::exp(cplx(0.0, -4.0 * pi * pi * t * xi * xi));
        cplx rhs = u.amplitude * gauss_integral(u.c, cplx(xi), 1) * phase;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("free kernel convolution reproduces the propagator") {
    GaussianState u;
    u.amplitude = cplx(0.9, -0.2);
    u.c = cplx(2.0, 0.7);
    for (double t : {0.2, 1.0, -0.6}) {
        GaussianState viaker = gauss_convolve(free_kernel(t, 1), u);
        GaussianState direct = free_evolve_gaussian(u, t);
        CHECK(std::abs(viaker.c - direct.c) < 1e-12);
        CHECK(std::abs(viaker.amplitude - direct.amplitude) < 1e-12);
    }
}

TEST_CASE("state_inner matches quadrature and the l2 norm") {
    GaussianState u, v;
    u.amplitude = cplx(1.2, 0.3);
    u.c = cplx(1.0, 0.5);
    v.amplitude = cplx(0.4, -1.0);
    v.c = cplx(2.0, -0.3);
    cplx got = state_inner(u, v);
    cplx expect = trapezoid(
        [&](double x) { return state_eval(u, x * x) * std::conj(state_eval(v, x * x)); }, -15.0,
        15.0, 30000);
    CHECK(std::abs(got - expect) < 1e-10 * std::abs(expect));
    CHECK(std::abs(std::sqrt(state_inner(u, u).real()) - state_l2_norm(u)) < 1e-12);
}

TEST_CASE("gaussian_f family and its evolution law") {
    cplx w(1.3, -0.2);
    GaussianState f = gaussian_f(w, 1);
    CHECK(std::abs(f.c - 1.0 / w) < 1e-14);
    CHECK(std::abs(f.amplitude - std::pow(w, cplx(-0.5))) < 1e-14);

    const double t = 0.3;
    GaussianState ft = free_evolve_gaussian(f, t);
    cplx wt = w + cplx(0.0, 4.0 * pi * t);
    CHECK(std::abs(ft.c - 1.0 / wt) < 1e-13);
    CHECK(std::abs(ft.amplitude - std::pow(wt, cplx(-0.5))) < 1e-13);

    // exp(-pi lam^2 |x|^2) = lam^{-d} f_{lam^{-2}}
    double lam = 0.6;
    GaussianState g = gaussian_f(cplx(1.0 / (lam * lam)), 1);
    CHECK(std::abs(g.amplitude / lam - 1.0) < 1e-14);
    CHECK(std::abs(g.c - cplx(lam * lam)) < 1e-14);
}

TEST_CASE("chirp amalgam norm: frozen values and the mollified limit") {
    CHECK(std::abs(exact_chirp_amalgam_norm(1.0, 2.0, 1) - std::pow(2.0, -0.25)) < 1e-14);
    CHECK(std::abs(exact_chirp_amalgam_norm(1.0, inf, 1) - std::pow(2.0, -0.25)) < 1e-14);
    double k = 4.0 * pi;
    double expect2 = std::sqrt(1.0 + k * k) / (k * k);
    CHECK(std::abs(exact_chirp_amalgam_norm(k, 1.0, 2) - expect2) < 1e-12 * expect2);
    // negative curvature only flips the chirp's sign, not the modulus profile
    CHECK(exact_chirp_amalgam_norm(-1.0, 2.0, 1) ==
          Catch::Approx(exact_chirp_amalgam_norm(1.0, 2.0, 1)));

    // the a -> 0+ limit of the width family lands exactly on the chirp value
    for (double b : {1.0, 4.0 * pi}) {
        for (double q : {1.0, 2.0, 4.0}) {
            double lim = exact_flq_lr_norm(0.0, b, q, inf, 1);
            CHECK(lim == Catch::Approx(exact_chirp_amalgam_norm(b, q, 1)));
        }
    }
    // and the mollified family sits within a few percent at small width
    double moll = exact_flq_lr_norm(0.02, 1.0, 2.0, inf, 1);
    CHECK(std::abs(moll / exact_chirp_amalgam_norm(1.0, 2.0, 1) - 1.0) < 0.05);
}

TEST_CASE("width-family norm: frozen values and symmetry") {
    // (q, r) = (2, 2) collapses to the L^2 pairing, independent of the chirp
    CHECK(std::abs(exact_flq_lr_norm(1.0, 0.0, 2.0, 2.0, 1) - std::pow(4.0, -0.25)) < 1e-14);
    CHECK(exact_flq_lr_norm(1.0, 57.3, 2.0, 2.0, 1) ==
          Catch::Approx(exact_flq_lr_norm(1.0, 0.0, 2.0, 2.0, 1)));
    CHECK(std::abs(exact_flq_lr_norm(0.25, 0.0, 2.0, 2.0, 1) - 1.0) < 1e-14);

    CHECK(std::abs(exact_flq_lr_norm(1.0, 0.0, 1.0, inf, 1) - 1.0) < 1e-14);

    // chirp reflection b -> -b is invisible to every norm in the family
    CHECK(exact_flq_lr_norm(0.7, 2.5, 4.0, 2.0, 1) ==
          Catch::Approx(exact_flq_lr_norm(0.7, -2.5, 4.0, 2.0, 1)));

    // d-th power separability
    double one = exact_flq_lr_norm(0.7, 1.3, 4.0, 2.0, 1);
    double three = exact_flq_lr_norm(0.7, 1.3, 4.0, 2.0, 3);
    CHECK(three == Catch::Approx(one * one * one));
}

TEST_CASE("width-family norm agrees with direct quadrature") {
    // || f_w ||_{W(FL^q, L^r)} at w = 1 + i, (q, r) = (2, 4), gaussian window:
    // inner Fourier transform, its L^q norm in xi, then the L^r norm in y,
    // all by trapezoid rule.
    const cplx w(1.0, 1.0);
    const double q = 2.0, r = 4.0;
    GaussianState f = gaussian_f(w, 1);
    const double dxi = 0.05, dy = 0.1;
    const int nxi = 281, ny = 141;
    std::vector<double> inner(ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = -7.0 + dy * iy;
        double acc = 0.0;
        for (int ix = 0; ix < nxi; ++ix) {
            const double xi = -7.0 + dxi * ix;
            cplx val = trapezoid(
                [&](double x) {
                    return state_eval(f, x * x) * std::exp(-pi * (x - y) * (x - y)) *
                           std::exp(cplx(0.0, -2.0 * pi * x * xi));
                },
                -7.0, 7.0, 700);
            double a = std::abs(val);
            double wgt = (ix == 0 || ix == nxi - 1) ? 0.5 : 1.0;
            acc += wgt * std::pow(a, q) * dxi;
        }
        inner[iy] = std::pow(acc, 1.0 / q);
    }
    double outer = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        double wgt = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
        outer += wgt * std::pow(inner[iy], r) * dy;
    }
    outer = std::pow(outer, 1.0 / r);
    double closed = exact_flq_lr_norm(1.0, 1.0, q, r, 1);
    CHECK(std::abs(outer / closed - 1.0) < 1e-6);
}

TEST_CASE("two-exponent local norm agrees with direct quadrature") {
    // || exp(-pi a x^2) ||_{W(L^{r1}, L^{r2})}, gaussian window.
    const double a = 1.0, r1 = 4.0, r2 = 2.0;
    auto inner = [&](double y) {
        double v = trapezoid_real(
            [&](double x) {
                return std::pow(std::exp(-pi * (a * x * x + (x - y) * (x - y))), r1);
            },
            -8.0, 8.0, 2000);
        return std::pow(v, 1.0 / r1);
    };
    double outer = trapezoid_real([&](double y) { return std::pow(inner(y), r2); }, -8.0, 8.0,
                                  800);
    outer = std::pow(outer, 1.0 / r2);
    double closed = exact_lr1_lr2_norm(a, 0.0, r1, r2, 1);
    CHECK(std::abs(outer / closed - 1.0) < 1e-8);

    CHECK(std::abs(exact_lr1_lr2_norm(1.0, 9.9, 2.0, 2.0, 1) - std::pow(2.0, -0.5)) < 1e-14);
    // r2 = inf takes the sup of the local profile, attained at y = 0
    double sup = exact_lr1_lr2_norm(1.0, 0.0, 2.0, inf, 1);
    CHECK(std::abs(sup - std::pow(2.0 * (a + 1.0), -0.25)) < 1e-14);
}

TEST_CASE("evolved rescaled norm: invariances") {
    // r1 = r2 = 2 is conserved in time
    CHECK(evolved_rescaled_norm(1.0, 5.0, 2.0, 2.0, 1) ==
          Catch::Approx(evolved_rescaled_norm(1.0, 0.0, 2.0, 2.0, 1)));
    // t = 0 reduces to the static two-exponent norm of exp(-pi lam^2 x^2)
    double lam = 0.8;
    CHECK(evolved_rescaled_norm(lam, 0.0, 4.0, 2.0, 1) ==
          Catch::Approx(exact_lr1_lr2_norm(lam * lam, 0.0, 4.0, 2.0, 1)));
    // time reflection
    CHECK(evolved_rescaled_norm(0.7, 1.3, 4.0, 6.0, 1) ==
          Catch::Approx(evolved_rescaled_norm(0.7, -1.3, 4.0, 6.0, 1)));
}
