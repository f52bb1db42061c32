#pragma once

#include <stdexcept>

#include "constants.hpp"

namespace ssiss {

// Double-well field: harmonic for x < x_L, barrier of height L_h on
// [x_L, x_L+L], zero beyond. The smooth variant replaces the steps by
// Theta(x, eps); RealWorldWindow adds a mirror barrier on the left.
struct PotentialSpec {
    enum class Variant { Free, IdealHarmonic, DoubleWell, SmoothDoubleWell, RealWorldWindow };
    Variant variant = Variant::IdealHarmonic;
    double x_L = 0.0;
    double L = 0.0;
    double L_h = 0.0;
    double eps_smooth = 0.0;
    double x_R = 0.0;  // RealWorldWindow only
    double R = 0.0;
    double R_h = 0.0;
    PhysicalConstants consts;

    static PotentialSpec harmonic(PhysicalConstants c = {}) {
        PotentialSpec p;
        p.consts = c;
        return p;
    }
    static PotentialSpec free_space(PhysicalConstants c = {}) {
        PotentialSpec p;
        p.variant = Variant::Free;
        p.consts = c;
        return p;
    }
    // Paper defaults: L = 2 x_L, L_h = m w^2 x_L^2 / 2.
    static PotentialSpec double_well(double x_L, PhysicalConstants c = {}, double L = -1.0,
                                     double L_h = -1.0);
    static PotentialSpec smooth_double_well(double x_L, double eps_smooth, PhysicalConstants c = {},
                                            double L = -1.0, double L_h = -1.0);

    void validate() const;
};

// Theta(x, eps) = (1/(eps sqrt(pi))) Int_{-inf}^x exp(-y^2/eps^2) dy,
// evaluated through the erf identity.
double smooth_step(double x, double eps);

// delta(x, eps) = d/dx Theta(x, eps) = exp(-x^2/eps^2)/(eps sqrt(pi)).
double smooth_delta(double x, double eps);

double eval_potential(const PotentialSpec& spec, double x);

// Perturbation V1ho(x, eps) = V(x) - harmonic part (smooth or piecewise
// depending on the variant); zero for IdealHarmonic.
double eval_perturbation(const PotentialSpec& spec, double x);

struct GaussianProduct {
    double eps0_sq = 0.0;
    double x0 = 0.0;
    double prefactor = 1.0;
};

// exp{-(x-z1)^2/e1^2} exp{-(x-z2)^2/e2^2} = prefactor * exp{-(x-x0)^2/eps0^2}
GaussianProduct gaussian_product(double z1, double eps1, double z2, double eps2);

}  // namespace ssiss
