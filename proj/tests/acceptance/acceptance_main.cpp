// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of
// failing criteria.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ssiss/experiments.hpp"
#include "ssiss/kernels/kernels.hpp"
#include "ssiss/mgwp.hpp"
#include "ssiss/quadrature.hpp"

using namespace ssiss;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

const PhysicalConstants C{};

void criteria_1_2_oracle() {
    const auto rep = run_experiment(ExperimentConfig::defaults("oracle-validate"));
    const double infid = rep.scalars.at("recurrence_infidelity");
    const double rt = rep.scalars.at("recurrence_runtime_s");
    report(1, rep.verdicts.at("recurrence") && rt < 5.0,
           "harmonic full-period recurrence infidelity < 1e-8, runtime < 5 s",
           fmt("infidelity %.2e, %.2f s", infid, rt));
    report(2,
           rep.verdicts.at("conservation_norm") && rep.verdicts.at("conservation_energy"),
           "norm drift < 1e-10 and relative energy drift < 1e-8 over 1000 steps",
           fmt("norm %.2e, energy %.2e", rep.scalars.at("norm_drift_max"),
               rep.scalars.at("energy_drift_max")));
}

void criterion_3_imperfection() {
    const auto rep = run_experiment(ExperimentConfig::defaults("imperfection-sweep"));
    const auto& fit = rep.fits.at("log_measured_vs_ym2");
    const bool ok = rep.verdicts.at("dominance") && rep.verdicts.at("decay_fit") &&
                    rep.verdicts.at("runtime");
    report(3, ok, "imperfection sweep: margin >= 0 at every x_L, log-linear decay in y_M^2",
           fmt("slope %.2f, r2 %.4f, %.1f s", fit.slope, fit.r2, rep.scalars.at("runtime_s")));
}

void criterion_4_trotter() {
    const auto rep = run_experiment(ExperimentConfig::defaults("trotter-scaling"));
    const auto& fit = rep.fits.at("log_measured_vs_log_tau");
    report(4, rep.verdicts.at("dominance") && rep.verdicts.at("cubic_slope"),
           "splitting error: slope 3.0 +- 0.3 and bound dominates at every tau",
           fmt("slope %.3f +- %.3f", fit.slope, fit.stderr_slope));
}

void criterion_5_pulse_basic() {
    const auto rep = run_experiment(ExperimentConfig::defaults("pulse-basic"));
    const auto& fit = rep.fits.at("log_measured_vs_log_u");
    report(5, rep.verdicts.at("dominance") && rep.verdicts.at("cubic_slope"),
           "basic sequence vs target propagator within reduction + per-step budget",
           fmt("slope %.3f", fit.slope));
}

void criteria_6_7_ssiss() {
    const auto rep = run_experiment(ExperimentConfig::defaults("ssiss-run"));
    report(6, rep.verdicts.at("momentum_kick") && rep.verdicts.at("runtime"),
           "full run: <p> = hbar dk (2 W0 dt)^2 within 1%",
           fmt("ratio %.5f, %.1f s", rep.scalars.at("p_ratio"), rep.scalars.at("runtime_s")));
    report(7, rep.verdicts.at("ld_within_budget") && rep.verdicts.at("gaussian_density"),
           "||final - LD state|| within total budget; single-Gaussian density",
           fmt("distance %.3e <= budget %.3e, density residual %.1e",
               rep.scalars.at("ld_distance"), rep.scalars.at("budget_total"),
               rep.scalars.at("gaussian_fit_residual")));
}

void criterion_8_mgwp() {
    // ten-term truncation: dominance at four parameter corners, then cubic
    // scaling of both bound and measurement in the per-sequence drive angle
    Grid box;
    box.x_min = -16.0;
    box.x_max = 16.0;
    box.n_points = 1024;
    GwpTerm g;
    g.dx2 = 0.5;
    bool dominated = true;
    for (double omega_amp : {0.05, 0.1}) {
        for (double dk : {0.02, 0.05}) {
            PhamdownBeams b;
            b.k0 = 0.5 * (0.2 + dk);
            b.k1 = 0.5 * (0.2 - dk);
            const double tau = 0.31;
            b.omega0 = omega_amp / (2.0 * tau);
            auto exact = sample(GaussianSuperposition::single(g), box, C);
            driven_rotation_exact(exact, b, 1.5 * kPi, tau, C);
            const auto r = ten_term_expansion(g, omega_amp, b.dk(), b.ksum(), 0.0, C);
            const double measured = state_distance(exact, sample(r.approx, box, C));
            dominated = dominated && measured <= r.residual_bound;
        }
    }
    std::vector<double> lu, lb, lm;
    for (double omega_amp : {0.03, 0.05, 0.08, 0.13, 0.21}) {
        PhamdownBeams b;  // dk = 0.05, ksum = 0.2
        const double tau = 0.31;
        b.omega0 = omega_amp / (2.0 * tau);
        auto exact = sample(GaussianSuperposition::single(g), box, C);
        driven_rotation_exact(exact, b, 1.5 * kPi, tau, C);
        const auto r = ten_term_expansion(g, omega_amp, b.dk(), b.ksum(), 0.0, C);
        lu.push_back(std::log(omega_amp));
        lb.push_back(std::log(r.residual_bound));
        lm.push_back(std::log(state_distance(exact, sample(r.approx, box, C))));
    }
    const auto fb = linear_fit(lu, lb);
    const auto fm = linear_fit(lu, lm);
    const bool slopes_ok = std::fabs(fb.slope - 3.0) <= 0.3 && std::fabs(fm.slope - 3.0) <= 0.3;
    report(8, dominated && slopes_ok,
           "ten-term residual bound dominates and both sides scale cubically",
           fmt("bound slope %.3f, measured slope %.3f", fb.slope, fm.slope));
}

void criterion_9_gaussian_machinery() {
    bool ik_ok = true;
    for (int k = 0; k <= 10; ++k) {
        const double x0 = 0.7, e0 = 1.3;
        auto f = [&](double x) {
            return std::pow(x, k) * std::exp(-(x - x0) * (x - x0) / (e0 * e0));
        };
        const double quad = adaptive_simpson(f, x0 - 16.0 * e0, x0 + 16.0 * e0, 1e-14);
        ik_ok = ik_ok &&
                std::fabs(gaussian_integral_ik(k, x0, e0) - quad) <= 1e-10 * std::fabs(quad);
    }
    bool erfc_ok = true;
    for (double y = 0.0; y <= 8.0; y += 0.25)
        erfc_ok = erfc_ok && erfc_tail_bound(y) >= 0.5 * kSqrtPi * std::erfc(y);

    bool prod_ok = true;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100 && prod_ok; ++t) {
        const double z1 = 2.0 * u(rng) - 1.0, z2 = 2.0 * u(rng) - 1.0;
        const double e1 = 0.3 + u(rng), e2 = 0.3 + u(rng);
        const auto gp = gaussian_product(z1, e1, z2, e2);
        for (double x = -3.0; x <= 3.0; x += 0.06) {
            const double lhs = std::exp(-(x - z1) * (x - z1) / (e1 * e1)) *
                               std::exp(-(x - z2) * (x - z2) / (e2 * e2));
            const double rhs = gp.prefactor * std::exp(-(x - gp.x0) * (x - gp.x0) / gp.eps0_sq);
            prod_ok = prod_ok && std::fabs(lhs - rhs) <= 1e-12;
        }
    }
    report(9, ik_ok && erfc_ok && prod_ok,
           "I_k vs quadrature < 1e-10; erfc tail dominance on [0,8]; product identity 1e-12",
           fmt("%s %s %s", ik_ok ? "ik" : "IK-FAIL", erfc_ok ? "erfc" : "ERFC-FAIL",
               prod_ok ? "product" : "PRODUCT-FAIL"));
}

void criterion_10_energy_boxes() {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool confined = true, dev_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        GwpTerm g;
        g.x_c = 2.0 * u(rng) - 1.0;
        g.p_c = 2.0 * u(rng) - 1.0;
        g.dx2 = 0.2 + u(rng);
        g.t0_param = 2.0 * u(rng) - 1.0;
        const double E = energy(g, C);
        const auto box = energy_param_bounds(E, C);
        const double x_L = 8.0;
        double min_ratio = 1e300;
        for (int i = 0; i < 64; ++i) {
            const auto h =
                evolve_quadratic(g, QuadraticHamiltonian::Harmonic, 2.0 * kPi * i / 64.0, C);
            const double eps2 = std::pow(derive_spread(h, C), 2);
            const double absw = std::abs(h.linewidth(C));
            confined = confined && std::fabs(h.x_c) < box.x_abs_max &&
                       std::fabs(h.p_c) < box.p_abs_max && eps2 > box.eps_sq_min &&
                       eps2 < box.eps_sq_max && absw > box.abs_w_min && absw < box.abs_w_max;
            min_ratio = std::min(min_ratio, (x_L - h.x_c) / std::sqrt(eps2));
        }
        dev_ok = dev_ok && box.dev_ratio_lower(x_L, E, C) <= min_ratio;
    }
    report(10, confined && dev_ok,
           "evolved parameters stay in the energy boxes; dev-ratio lower bound holds",
           fmt("%s, %s", confined ? "boxes ok" : "BOX VIOLATION",
               dev_ok ? "dev-ratio ok" : "DEV-RATIO VIOLATION"));
}

void criterion_11_selective() {
    const auto rep = run_experiment(ExperimentConfig::defaults("selective-excite"));
    const bool ok = rep.verdicts.at("target_excited") && rep.verdicts.at("spectator_ground") &&
                    rep.verdicts.at("leak_bound");
    report(11, ok, "windowed drive flips the target > 0.999, spectator stays ground > 0.999",
           fmt("target %.6f, spectator %.6f, leak %.2e <= %.2e",
               rep.scalars.at("target_e_pop"), rep.scalars.at("spectator_g_pop"),
               rep.scalars.at("spectator_leak"),
               rep.bound_reports.back().bound_value));
}

}  // namespace

int main() {
    std::printf("acceptance suite (kernels: %s)\n", kernels::active_name());
    try {
        criteria_1_2_oracle();
        criterion_3_imperfection();
        criterion_4_trotter();
        criterion_5_pulse_basic();
        criteria_6_7_ssiss();
        criterion_8_mgwp();
        criterion_9_gaussian_machinery();
        criterion_10_energy_boxes();
        criterion_11_selective();
    } catch (const std::exception& ex) {
        std::printf("[FAIL] acceptance aborted: %s\n", ex.what());
        return 99;
    }
    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return g_failures;
}
