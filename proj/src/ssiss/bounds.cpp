#include "bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "potentials.hpp"
#include "quadrature.hpp"

namespace ssiss {

namespace {

double dbl_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= double(n - k + j) / double(j);
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

double gaussian_integral_ik(int k, double x0, double eps0) {
    if (k < 0 || !(eps0 > 0.0))
        throw std::invalid_argument("gaussian_integral_ik: k >= 0, eps0 > 0 required");
    double sum = 0.0;
    for (int j = 0; j <= k; j += 2)
        sum += binom(k, j) * dbl_factorial(j - 1) / std::sqrt(std::pow(2.0, j)) *
               std::pow(x0, k - j) * std::pow(eps0, j);
    return eps0 * kSqrtPi * sum;
}

double erfc_tail_bound(double y_m) {
    if (y_m < 0.0) throw std::invalid_argument("erfc_tail_bound: y_m >= 0 required");
    return std::exp(-y_m * y_m) / (y_m + std::sqrt(y_m * y_m + 4.0 / kPi));
}

double ld_abs_moment(int m, double eps) {
    if (m < 0 || !(eps > 0.0)) throw std::invalid_argument("ld_abs_moment: bad arguments");
    if (m % 2 == 0) return dbl_factorial(m - 1) / std::sqrt(std::pow(2.0, m)) * std::pow(eps, m);
    return factorial((m - 1) / 2) * std::pow(eps, m) / kSqrtPi;
}

double basic_norm(BasicNormKind kind, int l, const GwpTerm& g, double center, double eps,
                  const PhysicalConstants& c) {
    if (l < 0 || l > 6) throw std::invalid_argument("basic_norm: 0 <= l <= 6");
    if (!(eps > 0.0)) throw std::invalid_argument("basic_norm: eps > 0");
    g.validate();
    const double eps_q = derive_spread(g, c);
    const double amp2 = std::norm(g.amplitude);

    if (kind == BasicNormKind::NBAS1) {
        // delta^2 has spread eps/sqrt(2); combine with the density Gaussian.
        const auto prod = gaussian_product(center, eps / std::sqrt(2.0), g.x_c, eps_q);
        const double pref = 1.0 / (eps * eps * kPi) / (eps_q * kSqrtPi);
        const double i2l = gaussian_integral_ik(2 * l, prod.x0, std::sqrt(prod.eps0_sq));
        return std::sqrt(amp2 * pref * prod.prefactor * i2l);
    }

    // NBAS2 by quadrature of x^{2l} Theta(x-center,eps)^2 |Psi|^2.
    const double lo = std::min(g.x_c - 12.0 * eps_q, center - 12.0 * eps);
    const double hi = std::max(g.x_c + 12.0 * eps_q, center + 12.0 * eps);
    auto f = [&](double x) {
        const double th = smooth_step(x - center, eps);
        const double rho = std::exp(-(x - g.x_c) * (x - g.x_c) / (eps_q * eps_q)) /
                           (eps_q * kSqrtPi);
        return std::pow(x, 2 * l) * th * th * amp2 * rho;
    };
    return std::sqrt(std::max(0.0, adaptive_simpson(f, lo, hi, 1e-13)));
}

double imperfection_p_function(double eps, double x_c, double y_m) {
    const double denom = y_m + std::sqrt(y_m * y_m + 4.0 / kPi);
    const double e2 = eps * eps, e3 = e2 * eps, e4 = e2 * e2;
    const double x2 = x_c * x_c, x3 = x2 * x_c, x4 = x2 * x2;
    const double first = 0.25 / kSqrtPi * (3.0 * e4 + 12.0 * e2 * x2 + 4.0 * x4) / denom;
    const double second = 0.25 / kSqrtPi *
                          (y_m * (3.0 + 2.0 * y_m * y_m) * e4 + 8.0 * (1.0 + y_m * y_m) * e3 * x_c +
                           12.0 * y_m * e2 * x2 + 8.0 * eps * x3);
    return first + second;
}

BoundReport imperfection_bound(const TrajectorySummary& traj, double x_L,
                               const PhysicalConstants& c, double T) {
    if (!(traj.y_m_min > 0.0))
        throw std::invalid_argument("imperfection_bound: wave packet reaches the joint");
    const double p = traj.p_max ? *traj.p_max
                                : imperfection_p_function(traj.eps_m, traj.x_m, traj.y_m_min);
    BoundReport r;
    r.name = "imperfection_first_order";
    r.paper_eq = "3.12";
    r.inputs = {{"x_L", x_L}, {"T", T},          {"x_m", traj.x_m},
                {"eps_m", traj.eps_m},           {"y_m_min", traj.y_m_min},
                {"P", p}};
    r.bound_value = (T / c.hbar) * 0.5 * c.mass * c.omega * c.omega * std::sqrt(p) *
                    std::exp(-0.5 * traj.y_m_min * traj.y_m_min);
    return r;
}

BoundReport trotter_bound(double m1_max, double m2_max, double tau, const PhysicalConstants& c) {
    if (m1_max < 0.0 || m2_max < 0.0)
        throw std::invalid_argument("trotter_bound: m-norms must be >= 0");
    BoundReport r;
    r.name = "trotter_third_order";
    r.paper_eq = "4.7/4.190";
    r.inputs = {{"m1_max", m1_max}, {"m2_max", m2_max}, {"tau", tau}};
    const double t3 = tau * tau * tau;
    r.bound_value = 0.5 / 6.0 * std::fabs(t3) / std::pow(c.hbar, 3) * (m1_max + 0.5 * m2_max);
    return r;
}

EnergyParamBounds energy_param_bounds(double E, const PhysicalConstants& c) {
    if (!(E > 0.0)) throw std::invalid_argument("energy_param_bounds: E must be > 0");
    const double mw2 = c.mass * c.omega * c.omega;
    EnergyParamBounds b;
    b.x_abs_max = std::sqrt(2.0 * E / mw2);
    b.p_abs_max = std::sqrt(2.0 * c.mass * E);
    b.eps_sq_min = c.hbar * c.hbar / (4.0 * c.mass * E);
    b.eps_sq_max = 4.0 * E / mw2;
    b.abs_w_min = c.hbar * c.hbar / (8.0 * c.mass * E);
    b.abs_w_max = 2.0 * E / mw2;
    return b;
}

double EnergyParamBounds::dev_ratio_lower(double x_L, double E, const PhysicalConstants& c) const {
    const double mw2 = c.mass * c.omega * c.omega;
    return (x_L - std::sqrt(2.0 * E / mw2)) / std::sqrt(4.0 * E / mw2);
}

namespace {

// sqrt{ sum_l C(2,l) a^l b^{2-l} |q_s|^l |q_c|^{2-l}... } machinery shared by
// the second- and first-order LD bounds (5.9/5.12 and 5.13 families).
double ld_bound(double qs, double qc, double dk, double eps, bool second_order) {
    const double c3 = second_order ? 1.0 / 6.0 : 0.5;       // |R| <= |u|^3/3! or u^2/2
    const double c4 = second_order ? 1.0 / 24.0 : 1.0 / 6.0;
    const int base = second_order ? 8 : 6;
    double s = 0.0;
    for (int l = 0; l <= 2; ++l) {
        s += binom(2, l) * std::pow(c3, l) * std::pow(c4, 2 - l) *
             std::pow(std::fabs(qs), l) * std::pow(std::fabs(qc), 2 - l) *
             std::pow(std::fabs(dk), base - l) * ld_abs_moment(base - l, eps);
    }
    return std::sqrt(s);
}

double mgwp_bound(double beta_c, double beta_s, double dk, double eps, double a1, double a2) {
    const double t1 = a1 * std::pow(beta_s, 6) * std::pow(eps * std::fabs(dk), 6);
    const double t2 = a2 / kSqrtPi * std::fabs(beta_c) * std::pow(std::fabs(beta_s), 5) *
                      std::pow(eps * std::fabs(dk), 7);
    return std::sqrt(t1 + t2);
}

double seq_bound(double omega0, double delta_t, double n, double dk, double eps, double a1,
                 double a2) {
    const double u = 2.0 * omega0 * delta_t / std::sqrt(n);
    return std::pow(u, 3) * std::pow(eps, 3) * std::pow(std::fabs(dk), 3) *
           std::sqrt(a1 + a2 / kSqrtPi * eps * std::fabs(dk));
}

}  // namespace

BoundReport expansion_bound(ExpansionBoundKind which, const ExpansionParams& p,
                            const PhysicalConstants& c) {
    if (p.n < 1.0 || p.eps0 <= 0.0)
        throw std::invalid_argument("expansion_bound: need n >= 1 and eps0 > 0");
    for (double v : {p.omega0, p.delta_t})
        if (v < 0.0) throw std::invalid_argument("expansion_bound: negative input");

    BoundReport r;
    const double dk = p.dk;
    switch (which) {
        case ExpansionBoundKind::LD_512: {
            const double q = p.p_tr ? std::fabs(*p.p_tr) / (c.hbar * std::fabs(dk))
                                    : std::pow(2.0 * p.omega0 * p.delta_t, 2);
            r.name = "ld_residual_second_order";
            r.paper_eq = "5.12";
            r.bound_value = ld_bound(q, q, dk, p.eps0, true);
            break;
        }
        case ExpansionBoundKind::LD_513: {
            const double q = p.p_tr ? std::fabs(*p.p_tr) / (c.hbar * std::fabs(dk))
                                    : std::pow(2.0 * p.omega0 * p.delta_t, 2);
            r.name = "ld_residual_first_order";
            r.paper_eq = "5.13";
            r.bound_value = ld_bound(q, q, dk, p.eps0, false);
            break;
        }
        case ExpansionBoundKind::MGWP_535:
            r.name = "mgwp_ten_term";
            r.paper_eq = "5.35";
            r.bound_value = mgwp_bound(p.beta_c, p.beta_s, dk, p.eps0, 5.0 / 6144.0, 1.0 / 256.0);
            break;
        case ExpansionBoundKind::MGWP_539:
            r.name = "mgwp_ten_term_mixed";
            r.paper_eq = "5.39";
            r.bound_value = mgwp_bound(p.beta_c, p.beta_s, dk, p.eps0, 5.0 / 12288.0, 1.0 / 512.0);
            break;
        case ExpansionBoundKind::SEQ_639:
            r.name = "seq_step1_truncation";
            r.paper_eq = "6.39";
            r.bound_value = seq_bound(p.omega0, p.delta_t, p.n, dk, p.eps0, 5.0 / 6144.0, 1.0 / 256.0);
            break;
        case ExpansionBoundKind::SEQ_654:
            r.name = "seq_step2_truncation";
            r.paper_eq = "6.54";
            r.bound_value = seq_bound(p.omega0, p.delta_t, p.n, dk, p.eps0, 5.0 / 12288.0, 1.0 / 512.0);
            break;
        case ExpansionBoundKind::SEQ_672:
            r.name = "seq_step3_truncation";
            r.paper_eq = "6.72";
            r.bound_value = seq_bound(p.omega0, p.delta_t, p.n, dk, p.eps0, 245.0 / 1536.0, 49.0 / 64.0);
            break;
        case ExpansionBoundKind::SEQ_689:
            r.name = "seq_step4_truncation";
            r.paper_eq = "6.89";
            r.bound_value = seq_bound(p.omega0, p.delta_t, p.n, dk, p.eps0, 125.0 / 192.0, 25.0 / 8.0);
            break;
        case ExpansionBoundKind::RED_694: {
            r.name = "propagator_reduction";
            r.paper_eq = "6.94";
            const double u = 4.0 * p.omega0 * p.delta_t / std::sqrt(p.n);
            r.bound_value = 5.0 / 6.0 * std::pow(u, 3) + 0.5 * std::pow(u, 4) +
                            std::pow(u, 6) / 48.0;
            break;
        }
        case ExpansionBoundKind::LDSTEP_6100: {
            r.name = "ld_step";
            r.paper_eq = "6.100";
            const double amp = p.p_tr ? std::fabs(*p.p_tr) / (c.hbar * std::fabs(dk)) / p.n
                                      : std::pow(2.0 * p.omega0 * p.delta_t, 2) / p.n;
            r.bound_value = amp * std::pow(p.eps0, 3) * std::pow(std::fabs(dk), 3) *
                            std::sqrt(15.0 / 288.0 + p.eps0 * std::fabs(dk) / (12.0 * kSqrtPi));
            break;
        }
    }
    r.inputs = {{"omega0", p.omega0}, {"delta_t", p.delta_t}, {"n", p.n},
                {"dk", p.dk},         {"eps0", p.eps0},       {"beta_c", p.beta_c},
                {"beta_s", p.beta_s}};
    if (p.p_tr) r.inputs["p_tr"] = *p.p_tr;
    return r;
}

BoundReport total_error_budget(const std::vector<FamilyBound>& families, int n) {
    bool have[3] = {false, false, false};
    double sums[3] = {0.0, 0.0, 0.0};
    for (const auto& f : families) {
        const int idx = int(f.family);
        have[idx] = true;
        sums[idx] += f.per_sequence_bound;
    }
    if (!have[0] || !have[1] || !have[2])
        throw std::invalid_argument("total_error_budget: all three families required");
    BoundReport r;
    r.name = "total_error_budget";
    r.paper_eq = "6.118";
    r.inputs = {{"n", double(n)},
                {"first_kind_per_seq", sums[0]},
                {"trotter_selectivity_per_seq", sums[1]},
                {"ld_step_per_seq", sums[2]}};
    r.bound_value = n * (sums[0] + sums[1] + sums[2]);
    return r;
}

}  // namespace ssiss
