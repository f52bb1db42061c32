#pragma once

#include "bounds.hpp"
#include "gwp.hpp"

namespace ssiss {

struct ExpansionResult {
    GaussianSuperposition approx;
    double residual_bound = 0.0;
    int n_terms = 0;
};

// exp{i z sin(dk x)} Psi ~= sum_{|n|<=n_trunc} J_n(z) exp(i n dk x) Psi:
// momentum-shifted GWPs; residual = sum of the neglected |J_n(z)|.
ExpansionResult bessel_expand(const GwpTerm& g, double z, double dk, int n_trunc,
                              const PhysicalConstants& c);

// Ten-term Gaussian superposition of the driven state
//   cos{W(t) cos(dk x/2 - pi/4)} Psi |g0> + sin{...} e^{i ksum x/2} Psi |e>
// with beta_c/beta_s evaluated at the packet center; residual from the
// ten-term truncation bound.
ExpansionResult ten_term_expansion(const GwpTerm& g, double omega_amp, double dk, double ksum,
                                   double x_c0, const PhysicalConstants& c);

struct LambDickeState {
    GwpTerm state;
    double residual_bound = 0.0;
};

// Second-order phase truncation exp{i[S0 + S1 y + S2 y^2/2]} absorbed into
// the GWP parameters (y = x - x_c).
GwpTerm absorb_quadratic_phase(const GwpTerm& g, double s0, double s1, double s2,
                               const PhysicalConstants& c);

// One of n Lamb-Dicke steps: momentum +(q_s/n) hbar dk, quadratic phase
// -(q_c/n)(dk)^2 y^2/2, constant phase q_c/n; residual per the second-order
// LD bound at the per-step strength.
LambDickeState lamb_dicke_state(const GwpTerm& g, double q_s, double q_c, double dk, int n,
                                const PhysicalConstants& c);

// Taylor-truncation residual bounds for cos/sin of the position-dependent
// Rabi angle, |R_{2n+1}| <= (2 W0 t)^{2n+1}/(2n+1)! etc.
double taylor_residual_cos(int n_trunc, double omega0, double t);
double taylor_residual_sin(int n_trunc, double omega0, double t);

}  // namespace ssiss
