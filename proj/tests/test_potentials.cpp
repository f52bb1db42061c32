#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ssiss/potentials.hpp"
#include "ssiss/quadrature.hpp"

using namespace ssiss;

TEST_CASE("piecewise double-well values") {
    const auto dw = PotentialSpec::double_well(4.0);
    // harmonic branch at x_L/2
    CHECK(eval_potential(dw, 2.0) == doctest::Approx(0.5 * 4.0).epsilon(1e-14));
    // barrier branch at x_L + L/2
    CHECK(eval_potential(dw, 4.0 + 0.5 * dw.L) == doctest::Approx(dw.L_h).epsilon(1e-14));
    // zero beyond the barrier
    CHECK(eval_potential(dw, 4.0 + dw.L + 1.0) == 0.0);
    // paper defaults L = 2 x_L, L_h = m w^2 x_L^2 / 2
    CHECK(dw.L == doctest::Approx(8.0));
    CHECK(dw.L_h == doctest::Approx(8.0));
}

TEST_CASE("smooth double-well converges to the piecewise field away from joints") {
    const double x_L = 4.0, eps = 1e-4 * x_L;
    const auto dw = PotentialSpec::double_well(x_L);
    const auto sm = PotentialSpec::smooth_double_well(x_L, eps);
    double worst = 0.0;
    for (double x = -6.0; x <= 16.0; x += 0.01) {
        if (std::fabs(x - x_L) < 5.0 * eps || std::fabs(x - x_L - dw.L) < 5.0 * eps) continue;
        worst = std::max(worst, std::fabs(eval_potential(sm, x) - eval_potential(dw, x)));
    }
    CHECK(worst < 1e-10 * dw.L_h);
}

TEST_CASE("smooth step") {
    CHECK(smooth_step(0.0, 0.3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(smooth_step(10.0 * 0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-12));

    // defining integral at x = eps by quadrature
    const double eps = 0.7;
    auto f = [&](double y) { return std::exp(-y * y / (eps * eps)) / (eps * kSqrtPi); };
    const double quad = adaptive_simpson(f, -12.0 * eps, eps, 1e-14);
    CHECK(smooth_step(eps, eps) == doctest::Approx(quad).epsilon(1e-12));

    // strictly increasing where the erf is away from double saturation,
    // non-decreasing everywhere
    double prev = smooth_step(-2.5, 0.5);
    for (double x = -2.45; x <= 2.5; x += 0.05) {
        const double cur = smooth_step(x, 0.5);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = smooth_step(-6.0, 0.5);
    for (double x = -5.9; x <= 6.0; x += 0.1) {
        const double cur = smooth_step(x, 0.5);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("smooth delta") {
    const double eps = 0.4;
    CHECK(smooth_delta(0.0, eps) == doctest::Approx(1.0 / (eps * kSqrtPi)).epsilon(1e-14));

    auto f = [&](double x) { return smooth_delta(x, eps); };
    CHECK(adaptive_simpson(f, -14.0 * eps, 14.0 * eps, 1e-14) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // d/dx Theta = delta at 20 points by central differences
    const double h = 1e-6;
    for (int i = 0; i < 20; ++i) {
        const double x = -2.0 + 4.0 * i / 19.0;
        const double fd = (smooth_step(x + h, eps) - smooth_step(x - h, eps)) / (2.0 * h);
        CHECK(fd == doctest::Approx(smooth_delta(x, eps)).epsilon(1e-8));
    }
}

TEST_CASE("spatial selectivity of the perturbation") {
    const double x_L = 4.0, eps = 0.05;
    const auto sm = PotentialSpec::smooth_double_well(x_L, eps);
    for (double x = -8.0; x < x_L - 5.0 * eps; x += 0.05)
        CHECK(std::fabs(eval_perturbation(sm, x)) < 1e-10 * sm.L_h);
}

TEST_CASE("gaussian product identity") {
    const auto same = gaussian_product(0.0, 0.7, 0.0, 0.7);
    CHECK(same.eps0_sq == doctest::Approx(0.49 / 2.0).epsilon(1e-14));
    CHECK(same.x0 == 0.0);
    CHECK(same.prefactor == 1.0);

    const double L = 2.5, e1 = 0.6, e2 = 0.9;
    const auto apart = gaussian_product(0.0, e1, L, e2);
    CHECK(apart.prefactor == doctest::Approx(std::exp(-L * L / (e1 * e1 + e2 * e2))).epsilon(1e-14));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const double z1 = 2.0 * u(rng) - 1.0, z2 = 2.0 * u(rng) - 1.0;
        const double w1 = 0.3 + u(rng), w2 = 0.3 + u(rng);
        const auto g = gaussian_product(z1, w1, z2, w2);
        for (int i = 0; i < 100; ++i) {
            const double x = -3.0 + 6.0 * i / 99.0;
            const double lhs = std::exp(-(x - z1) * (x - z1) / (w1 * w1)) *
                               std::exp(-(x - z2) * (x - z2) / (w2 * w2));
            const double rhs = g.prefactor * std::exp(-(x - g.x0) * (x - g.x0) / g.eps0_sq);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS(PotentialSpec::double_well(-1.0));
    CHECK_THROWS(PotentialSpec::double_well(4.0, PhysicalConstants{}, 8.0, 1.0));  // L_h too low
    CHECK_THROWS(smooth_step(0.0, -1.0));
}
