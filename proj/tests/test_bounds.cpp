#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ssiss/bounds.hpp"
#include "ssiss/potentials.hpp"
#include "ssiss/quadrature.hpp"
#include "ssiss/report.hpp"

using namespace ssiss;

namespace {
const PhysicalConstants C{};
}

TEST_CASE("gaussian integral I_k") {
    CHECK(gaussian_integral_ik(0, 1.3, 0.8) == doctest::Approx(0.8 * kSqrtPi).epsilon(1e-14));
    // k = 2: eps0 sqrt(pi) (x0^2 + eps0^2/2)
    CHECK(gaussian_integral_ik(2, 1.3, 0.8) ==
          doctest::Approx(0.8 * kSqrtPi * (1.3 * 1.3 + 0.5 * 0.64)).epsilon(1e-14));

    // quadrature oracle up to k = 10
    for (int k = 0; k <= 10; ++k) {
        const double x0 = 0.7, e0 = 1.3;
        auto f = [&](double x) {
            return std::pow(x, k) * std::exp(-(x - x0) * (x - x0) / (e0 * e0));
        };
        const double quad = adaptive_simpson(f, x0 - 16.0 * e0, x0 + 16.0 * e0, 1e-14);
        CHECK(gaussian_integral_ik(k, x0, e0) == doctest::Approx(quad).epsilon(1e-10));
    }
}

TEST_CASE("erfc tail bound dominates the exact tail") {
    CHECK(erfc_tail_bound(0.0) == doctest::Approx(0.5 * kSqrtPi).epsilon(1e-12));
    CHECK(erfc_tail_bound(1.0) == doctest::Approx(0.1467).epsilon(1e-3));
    for (double y : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double exact = 0.5 * kSqrtPi * std::erfc(y);
        CHECK(erfc_tail_bound(y) >= exact);
        if (y == 1.0) CHECK(exact == doctest::Approx(0.1394).epsilon(1e-3));
    }
}

TEST_CASE("basic norms") {
    GwpTerm g;
    g.dx2 = 0.5;
    g.x_c = 0.4;
    g.p_c = 0.2;
    const double eps = 0.3;

    SUBCASE("NBAS1 peaks when the delta sits on the packet") {
        const double at_center = basic_norm(BasicNormKind::NBAS1, 0, g, g.x_c, eps, C);
        for (double off : {0.5, 1.0, 2.0, 4.0})
            CHECK(basic_norm(BasicNormKind::NBAS1, 0, g, g.x_c + off, eps, C) < at_center);
        const double far = basic_norm(BasicNormKind::NBAS1, 0, g, g.x_c + 10.0, eps, C);
        CHECK(far < 1e-15 * at_center);
    }

    SUBCASE("NBAS1 closed form equals direct quadrature") {
        for (int l : {0, 1, 3}) {
            const double closed = basic_norm(BasicNormKind::NBAS1, l, g, 1.1, eps, C);
            auto f = [&](double x) {
                const double d = smooth_delta(x - 1.1, eps);
                return std::pow(x, 2 * l) * d * d * std::norm(g.eval(x, C));
            };
            const double quad = std::sqrt(adaptive_simpson(f, -12.0, 12.0, 1e-14));
            CHECK(closed == doctest::Approx(quad).epsilon(1e-10));
        }
    }

    SUBCASE("NBAS2 matches a dense Riemann sum") {
        const double c0 = 1.7;
        const double val = basic_norm(BasicNormKind::NBAS2, 2, g, c0, eps, C);
        const int n = 1000000;
        const double lo = -14.0, hi = 14.0, h = (hi - lo) / n;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = lo + (i + 0.5) * h;
            const double th = smooth_step(x - c0, eps);
            acc += std::pow(x, 4) * th * th * std::norm(g.eval(x, C)) * h;
        }
        CHECK(val == doctest::Approx(std::sqrt(acc)).epsilon(1e-9));
    }
}

TEST_CASE("first-order imperfection bound") {
    TrajectorySummary traj{1.0, 1.2, 3.0, std::nullopt};

    SUBCASE("vanishes at large joint position") {
        TrajectorySummary far = traj;
        far.y_m_min = 40.0;
        CHECK(imperfection_bound(far, 50.0, C, 6.28).bound_value < 1e-300);
    }

    SUBCASE("doubling y with fixed P rescales by exp(-(36-9)/2)") {
        TrajectorySummary a = traj, b = traj;
        a.p_max = b.p_max = 7.0;
        b.y_m_min = 6.0;
        const double ra = imperfection_bound(a, 6.0, C, 1.0).bound_value;
        const double rb = imperfection_bound(b, 6.0, C, 1.0).bound_value;
        CHECK(rb / ra == doctest::Approx(std::exp(-(36.0 - 9.0) / 2.0)).epsilon(1e-12));
    }

    SUBCASE("log bound is affine in y^2 with slope -1/2 at fixed P") {
        std::vector<double> y2, lb;
        for (double y = 3.0; y <= 8.0; y += 1.0) {
            TrajectorySummary t = traj;
            t.y_m_min = y;
            t.p_max = 11.0;
            y2.push_back(y * y);
            lb.push_back(std::log(imperfection_bound(t, 6.0, C, 1.0).bound_value));
        }
        const auto fit = linear_fit(y2, lb);
        CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(fit.r2 > 0.999);
    }

    CHECK_THROWS(imperfection_bound(TrajectorySummary{1.0, 1.0, -0.1, std::nullopt}, 6.0, C, 1.0));
}

TEST_CASE("third-order splitting bound") {
    CHECK(trotter_bound(1.0, 2.0, 0.0, C).bound_value == 0.0);
    const double full = trotter_bound(0.8, 0.3, 0.2, C).bound_value;
    const double half = trotter_bound(0.8, 0.3, 0.1, C).bound_value;
    CHECK(full / half == doctest::Approx(8.0).epsilon(1e-12));
    CHECK_THROWS(trotter_bound(-1.0, 0.0, 0.1, C));
}

TEST_CASE("energy-derived parameter boxes") {
    const auto b = energy_param_bounds(0.5, C);
    CHECK(b.x_abs_max == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.p_abs_max == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.eps_sq_min == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.eps_sq_max == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.dev_ratio_lower(6.0, 0.5, C) == doctest::Approx(5.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS(energy_param_bounds(0.0, C));
}

TEST_CASE("closed-form expansion bounds") {
    ExpansionParams p;
    p.omega0 = 0.5;
    p.delta_t = 0.2;
    p.n = 16.0;
    p.dk = 0.05;
    p.eps0 = 1.0;

    SUBCASE("reduction bound coefficients") {
        ExpansionParams q = p;  // 4 W0 dt / sqrt(n) = 0.1
        const double v = expansion_bound(ExpansionBoundKind::RED_694, q, C).bound_value;
        CHECK(v == doctest::Approx(5.0 / 6.0 * 1e-3 + 0.5 * 1e-4 + 1e-6 / 48.0).epsilon(1e-12));
        CHECK(v == doctest::Approx(8.834e-4).epsilon(1e-3));
    }

    SUBCASE("every per-step bound vanishes with the pulse") {
        ExpansionParams q = p;
        q.delta_t = 0.0;
        for (auto kind : {ExpansionBoundKind::SEQ_639, ExpansionBoundKind::SEQ_654,
                          ExpansionBoundKind::SEQ_672, ExpansionBoundKind::SEQ_689,
                          ExpansionBoundKind::RED_694, ExpansionBoundKind::LDSTEP_6100})
            CHECK(expansion_bound(kind, q, C).bound_value == 0.0);
    }

    SUBCASE("SEQ_639 closed form") {
        const double u = 2.0 * p.omega0 * p.delta_t / 4.0;
        const double expect = std::pow(u, 3) * std::pow(p.eps0 * p.dk, 3) *
                              std::sqrt(5.0 / 6144.0 + p.eps0 * p.dk / (256.0 * kSqrtPi));
        CHECK(expansion_bound(ExpansionBoundKind::SEQ_639, p, C).bound_value ==
              doctest::Approx(expect).epsilon(1e-13));
    }

    SUBCASE("n times the LD step bound is n-independent at fixed p_tr") {
        ExpansionParams a = p, b = p;
        a.p_tr = b.p_tr = 0.002;
        a.n = 10.0;
        b.n = 100.0;
        const double va = 10.0 * expansion_bound(ExpansionBoundKind::LDSTEP_6100, a, C).bound_value;
        const double vb = 100.0 * expansion_bound(ExpansionBoundKind::LDSTEP_6100, b, C).bound_value;
        CHECK(va == doctest::Approx(vb).epsilon(1e-12));
    }

    CHECK_THROWS(expansion_bound(ExpansionBoundKind::SEQ_639, ExpansionParams{-1.0}, C));
}

TEST_CASE("ld absolute moments against quadrature") {
    const double eps = 1.4;
    for (int m = 0; m <= 8; ++m) {
        auto f = [&](double y) {
            return std::pow(std::fabs(y), m) * std::exp(-y * y / (eps * eps)) / (eps * kSqrtPi);
        };
        const double quad = adaptive_simpson(f, -16.0 * eps, 16.0 * eps, 1e-14);
        CHECK(ld_abs_moment(m, eps) == doctest::Approx(quad).epsilon(1e-11));
    }
}

TEST_CASE("total error budget") {
    std::vector<FamilyBound> fams = {{BudgetFamily::FirstKind, 0.0},
                                     {BudgetFamily::TrotterSelectivity, 0.0},
                                     {BudgetFamily::LambDickeStep, 0.0}};
    CHECK(total_error_budget(fams, 4).bound_value == 0.0);
    fams[0].per_sequence_bound = 0.1;
    fams[1].per_sequence_bound = 0.2;
    fams[2].per_sequence_bound = 0.05;
    CHECK(total_error_budget(fams, 4).bound_value == doctest::Approx(4.0 * 0.35).epsilon(1e-14));
    CHECK_THROWS(total_error_budget({{BudgetFamily::FirstKind, 0.1}}, 4));
}
