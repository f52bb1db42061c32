#pragma once

#include <complex>
#include <vector>

#include "constants.hpp"

namespace ssiss {

using cplx = std::complex<double>;

enum class InternalState { g0, e, g1 };

// Gaussian wave packet in the standard form
//   amplitude * exp(i phi0) * (dx2/2pi)^{1/4} * W^{-1/2}
//     * P(x) * exp{-(x-x_c)^2/(4W)} * exp{i p_c x / hbar},
// W = dx2 + i hbar t0_param / (2 m).  P(x) is an optional polynomial
// prefactor (coefficients in plain x, ascending, degree <= 6); an empty
// prefactor means a pure GWP, amplitude 1 means unit norm.
struct GwpTerm {
    cplx amplitude{1.0, 0.0};
    double global_phase = 0.0;
    double x_c = 0.0;
    double p_c = 0.0;
    double dx2 = 0.5;
    double t0_param = 0.0;
    std::vector<cplx> prefactor_coeffs;

    bool pure() const { return prefactor_coeffs.empty(); }
    cplx linewidth(const PhysicalConstants& c) const {
        return {dx2, c.hbar * t0_param / (2.0 * c.mass)};
    }
    void validate() const;
    // Wavefunction value at x (everything included).
    cplx eval(double x, const PhysicalConstants& c) const;
};

struct LabeledTerm {
    GwpTerm term;
    InternalState label = InternalState::g0;
};

struct GaussianSuperposition {
    std::vector<LabeledTerm> terms;

    static GaussianSuperposition single(GwpTerm g, InternalState label = InternalState::g0) {
        GaussianSuperposition s;
        s.terms.push_back({std::move(g), label});
        return s;
    }
    double norm(const PhysicalConstants& c) const;
};

enum class QuadraticHamiltonian { Harmonic, Free };

// Wave-packet spread: eps^2 = 2[dx2 + (hbar t0/(2 m sqrt(dx2)))^2]; eps^2/2
// is the position variance of |Psi|^2.
double derive_spread(const GwpTerm& g, const PhysicalConstants& c);

// Motional energy of a pure GWP in the harmonic trap,
//   E = p_c^2/2m + m w^2 x_c^2/2 + m w^2 eps^2/4 + hbar^2/(8 m dx2).
double energy(const GwpTerm& g, const PhysicalConstants& c);

// Exact image of a pure GWP under exp(-i H tau / hbar) for H harmonic or
// free; negative tau is the inverse propagator. Global phase is exact.
GwpTerm evolve_quadratic(const GwpTerm& g, QuadraticHamiltonian h, double tau,
                         const PhysicalConstants& c);

// <a|b>, term-pairwise in closed form; internal labels are orthogonal.
cplx overlap(const GaussianSuperposition& a, const GaussianSuperposition& b,
             const PhysicalConstants& c);
cplx overlap_terms(const GwpTerm& a, const GwpTerm& b, const PhysicalConstants& c);

// Multiply by exp(i k_lin (x-x_c)) * exp(-c_quad (x-x_c)^2): boosts p_c by
// hbar k_lin and updates the linewidth via 1/(4W') = 1/(4W) + c_quad.
GwpTerm modulate(const GwpTerm& g, double k_lin, cplx c_quad, const PhysicalConstants& c);

// Coefficients (plain x, ascending) of Q_j with d^j Psi/dx^j = Q_j(x) Psi.
std::vector<cplx> derivative_polynomial(const GwpTerm& g, int j, const PhysicalConstants& c);

// Moments of a complex Gaussian: integral x^k exp{-alpha (x-z)^2} dx,
// Re(alpha) > 0. Used by the closed-form overlap and the basic norms.
cplx complex_gaussian_moment(int k, cplx alpha, cplx z);

}  // namespace ssiss
