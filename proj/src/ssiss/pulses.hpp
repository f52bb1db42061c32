#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "potentials.hpp"

namespace ssiss {

using cplx = std::complex<double>;
struct SpinorGrid;

// Smoothed spatial window: Theta(x - x_lo, eps) * Theta(x_hi - x, eps),
// infinite sides drop their factor.
struct SpatialWindow {
    double x_lo = -std::numeric_limits<double>::infinity();
    double x_hi = std::numeric_limits<double>::infinity();
    double eps_smooth = 0.05;

    double mask(double x) const {
        double m = 1.0;
        if (std::isfinite(x_lo)) m *= smooth_step(x - x_lo, eps_smooth);
        if (std::isfinite(x_hi)) m *= smooth_step(x_hi - x, eps_smooth);
        return m;
    }
};

// PHAMDOWN beam pair in the rotating frame; alpha is fixed at pi/4 for all
// sequences in scope.
struct PhamdownBeams {
    double omega0 = 0.5;
    double k0 = 0.125;
    double k1 = 0.075;
    double alpha = 0.25 * kPi;
    std::optional<SpatialWindow> window;

    double dk() const { return k0 - k1; }
    double ksum() const { return k0 + k1; }
    void validate() const;
};

// H_I(x) = Q_x I_x + Q_y I_y over {g0, e}; diagonal is zero, so the matrix
// is fixed by the (e,g0) element 0.5*(Q_x - i Q_y).
struct Interaction2x2 {
    double q_x = 0.0;
    double q_y = 0.0;
    cplx eg() const { return 0.5 * cplx(q_x, -q_y); }
};

// gamma must be one of {0, pi/2, pi, 3pi/2}; the window (when present) is a
// multiplicative Theta-mask.
Interaction2x2 interaction_hi(const PhamdownBeams& beams, double gamma, double x,
                              const PhysicalConstants& c);

struct SequenceStep {
    enum class Kind { FieldFree, Driven };
    Kind kind = Kind::FieldFree;
    double tau = 0.0;     // negative = inverse propagator marker
    double gamma = 0.0;   // Driven only
    PotentialSpec potential;
};

enum class SequenceKind { TheoreticalA, ExperimentalA, ImprovedB };

struct PulseSequence {
    SequenceKind kind = SequenceKind::ExperimentalA;
    PhamdownBeams beams;
    std::vector<SequenceStep> steps;  // in application order
    int repeats = 1;
    // Phase picked up by realizing each inverse field-free propagator as a
    // forward 2k*pi - tau evolution (pi per replaced step, mod 2pi).
    double global_phase = 0.0;

    std::string to_json() const;
};

// Nine-propagator basic sequences of the triggering pulse. delta_t is the
// full-pulse duration parameter, n the repeat count of [P(delta_t/sqrt(n))]^n.
// k_period is the integer k in w*tau' = 2k*pi - w*tau (default 1).
PulseSequence build_sequence(SequenceKind kind, double delta_t, int n,
                             const PotentialSpec& potential, const PhamdownBeams& beams,
                             int k_period = 1);

// Space-only propagator exp(-i H_I tau / hbar) applied pointwise on the
// grid; g1 content untouched. Norm-preserving.
void driven_rotation_exact(SpinorGrid& state, const PhamdownBeams& beams, double gamma, double tau,
                           const PhysicalConstants& c);

// Target propagator exp{-i (4 W0 dt)^2 I_z cos^2(dk x/2 - pi/4)} pointwise.
void target_propagator(SpinorGrid& state, const PhamdownBeams& beams, double delta_t,
                       const PhysicalConstants& c);

}  // namespace ssiss
