#include "mgwp.hpp"

#include <cmath>
#include <stdexcept>

namespace ssiss {

namespace {

double bessel_j(int n, double z) {
    const int an = std::abs(n);
    double v = std::cyl_bessel_j(double(an), std::fabs(z));
    if (n < 0 && (an % 2)) v = -v;
    if (z < 0.0 && (an % 2)) v = -v;
    return v;
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

ExpansionResult bessel_expand(const GwpTerm& g, double z, double dk, int n_trunc,
                              const PhysicalConstants& c) {
    if (n_trunc < 0) throw std::invalid_argument("bessel_expand: n_trunc >= 0");
    g.validate();
    ExpansionResult res;
    for (int n = -n_trunc; n <= n_trunc; ++n) {
        const double jn = bessel_j(n, z);
        if (jn == 0.0 && n != 0) continue;
        GwpTerm t = modulate(g, n * dk, cplx(0.0, 0.0), c);
        t.global_phase += n * dk * g.x_c;  // e^{i n dk x} = e^{i n dk y} e^{i n dk x_c}
        t.amplitude *= jn;
        res.approx.terms.push_back({std::move(t), InternalState::g0});
    }
    res.n_terms = int(res.approx.terms.size());
    // residual: neglected tail of sum |J_n|, super-exponentially decaying
    double tail = 0.0;
    for (int n = n_trunc + 1; n < n_trunc + 400; ++n) {
        const double a = std::fabs(bessel_j(n, z));
        tail += a;
        if (a < 1e-300 && n > std::fabs(z) + 4) break;
    }
    res.residual_bound = 2.0 * tail;
    return res;
}

ExpansionResult ten_term_expansion(const GwpTerm& g, double omega_amp, double dk, double ksum,
                                   double x_c0, const PhysicalConstants& c) {
    g.validate();
    const double beta_c = omega_amp * std::cos(0.5 * dk * x_c0 - 0.25 * kPi);
    const double beta_s = omega_amp * std::sin(0.5 * dk * x_c0 - 0.25 * kPi);
    const double cb = std::cos(beta_c), sb = std::sin(beta_c);
    const double b0g = beta_c * sb + (1.0 - 0.75 * beta_c * beta_c - 0.25 * beta_s * beta_s) * cb;
    const double b0e = -beta_c * cb + (1.0 - 0.75 * beta_c * beta_c - 0.25 * beta_s * beta_s) * sb;

    ExpansionResult res;
    auto push = [&](double k_lin, cplx coeff, InternalState label, double extra_phase) {
        if (coeff == cplx(0.0, 0.0)) return;
        GwpTerm t = modulate(g, k_lin, cplx(0.0, 0.0), c);
        t.global_phase += extra_phase;
        t.amplitude *= coeff;
        res.approx.terms.push_back({std::move(t), label});
    };
    // A cos(a y) + B sin(a y) = (A-iB)/2 e^{iay} + (A+iB)/2 e^{-iay}
    auto push_pair = [&](double a, double A, double B, InternalState label, double k_shift,
                         double extra_phase) {
        push(k_shift + a, 0.5 * cplx(A, -B), label, extra_phase);
        push(k_shift - a, 0.5 * cplx(A, B), label, extra_phase);
    };

    const double cg = beta_c * cb - sb;       // half-angle harmonics, g0 side
    push(0.0, b0g, InternalState::g0, 0.0);
    push_pair(0.5 * dk, cg * beta_c, -cg * beta_s, InternalState::g0, 0.0, 0.0);
    push_pair(dk, -0.25 * cb * (beta_c * beta_c - beta_s * beta_s), 0.5 * cb * beta_c * beta_s,
              InternalState::g0, 0.0, 0.0);

    const double ce = beta_c * sb + cb;       // e side, carries e^{i ksum x / 2}
    const double phase_e = 0.5 * ksum * g.x_c;
    push(0.5 * ksum, b0e, InternalState::e, phase_e);
    push_pair(0.5 * dk, ce * beta_c, -ce * beta_s, InternalState::e, 0.5 * ksum, phase_e);
    push_pair(dk, -0.25 * sb * (beta_c * beta_c - beta_s * beta_s), 0.5 * sb * beta_c * beta_s,
              InternalState::e, 0.5 * ksum, phase_e);

    res.n_terms = int(res.approx.terms.size());
    ExpansionParams p;
    p.beta_c = beta_c;
    p.beta_s = beta_s;
    p.dk = dk;
    p.eps0 = derive_spread(g, c);
    res.residual_bound = expansion_bound(ExpansionBoundKind::MGWP_535, p, c).bound_value;
    return res;
}

GwpTerm absorb_quadratic_phase(const GwpTerm& g, double s0, double s1, double s2,
                               const PhysicalConstants& c) {
    // exp{i s2 y^2/2} = exp{-c_quad y^2} with c_quad = -i s2 / 2
    GwpTerm out = modulate(g, s1, cplx(0.0, -0.5 * s2), c);
    out.global_phase += s0;
    return out;
}

LambDickeState lamb_dicke_state(const GwpTerm& g, double q_s, double q_c, double dk, int n,
                                const PhysicalConstants& c) {
    if (n < 1) throw std::invalid_argument("lamb_dicke_state: n >= 1");
    LambDickeState r;
    r.state = absorb_quadratic_phase(g, q_c / n, (q_s / n) * dk, -(q_c / n) * dk * dk, c);
    ExpansionParams p;
    p.dk = dk;
    p.eps0 = derive_spread(g, c);
    p.n = 1.0;
    p.p_tr = std::max(std::fabs(q_s), std::fabs(q_c)) / double(n) * c.hbar * std::fabs(dk);
    r.residual_bound = dk == 0.0
                           ? 0.0
                           : expansion_bound(ExpansionBoundKind::LD_512, p, c).bound_value;
    return r;
}

double taylor_residual_cos(int n_trunc, double omega0, double t) {
    return std::pow(2.0 * std::fabs(omega0) * t, 2 * n_trunc + 1) / factorial(2 * n_trunc + 1);
}

double taylor_residual_sin(int n_trunc, double omega0, double t) {
    return std::pow(2.0 * std::fabs(omega0) * t, 2 * n_trunc + 2) / factorial(2 * n_trunc + 2);
}

}  // namespace ssiss
