#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "wam/fit.hpp"
#include "wam/gaussian.hpp"

using namespace wam;

TEST_CASE("exact power law is recovered exactly") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 12; ++i) {
        double x = 0.5 * std::pow(1.7, i);
        xs.push_back(x);
        ys.push_back(std::pow(x, -1.5));
    }
    ExponentFit f = fit_loglog(xs, ys);
    CHECK(f.slope == Catch::Approx(-1.5).margin(1e-12));
    CHECK(f.r_squared == Catch::Approx(1.0).margin(1e-12));
    CHECK(f.accepted());
    CHECK(f.range_lo == Catch::Approx(xs.front()));
    CHECK(f.range_hi == Catch::Approx(xs.back()));
}

TEST_CASE("prefactor lands in the intercept") {
    ExponentFit f = lambda_exponent([](double l) { return 3.0 * std::pow(l, 2.25); }, 0.1, 10.0);
    CHECK(f.slope == Catch::Approx(2.25).margin(1e-10));
    CHECK(f.intercept == Catch::Approx(std::log(3.0)).margin(1e-10));
}

TEST_CASE("lower-order additive terms barely move the slope") {
    // the sqrt(l) term adds at most l^{1/2}/2 ~ 0.05 of local slope at the
    // top of the window; the fitted drift lands near 0.027
    ExponentFit f = lambda_exponent(
        [](double l) { return std::pow(l, -1.5) * (1.0 + std::sqrt(l)); }, 1e-3, 1e-2);
    CHECK(std::abs(f.slope + 1.5) < 0.04);
    CHECK(f.accepted());
}

TEST_CASE("width-family norm slopes in the two dual branches") {
    // evolved branch (b fixed, width -> 0): slope d/r' = 3/4 at r = 4, d = 1
    ExponentFit moved = lambda_exponent(
        [](double l) {
            return exact_flq_lr_norm(std::pow(l, -2.0), 4.0 * pi, conj_exp(4.0), 4.0, 1);
        },
        1e-3, 1e-2);
    CHECK(std::abs(moved.slope - 0.75) < 0.01);

    // initial branch (b = 0, dual pair): slope d/r = 1/4
    ExponentFit init = lambda_exponent(
        [](double l) { return exact_flq_lr_norm(std::pow(l, -2.0), 0.0, 4.0, conj_exp(4.0), 1); },
        1e-3, 1e-2);
    CHECK(std::abs(init.slope - 0.25) < 0.01);

    // the gap between the branches is 2d(1/2 - 1/r) = 1/2
    CHECK(std::abs((moved.slope - init.slope) - 0.5) < 0.02);
}

TEST_CASE("oscillation is rejected through r_squared") {
    ExponentFit f =
        lambda_exponent([](double l) { return 2.0 + std::sin(5.0 * std::log(l)); }, 1.0, 100.0);
    CHECK_FALSE(f.accepted());
    CHECK(f.r_squared < 0.9);
}

TEST_CASE("constant samples fit as a perfect zero slope") {
    ExponentFit f = fit_loglog({1.0, 2.0, 4.0}, {3.0, 3.0, 3.0});
    CHECK(f.slope == 0.0);
    CHECK(f.r_squared == 1.0);
}

TEST_CASE("degenerate input throws") {
    CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({2.0, 2.0}, {1.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(lambda_exponent([](double) { return 1.0; }, -1.0, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(lambda_exponent([](double) { return 1.0; }, 1.0, 2.0, 1),
                    std::invalid_argument);
}
