#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwp.hpp"
#include "potentials.hpp"
#include "pulses.hpp"

namespace ssiss {

struct Grid {
    double x_min = -12.0;
    double x_max = 36.0;
    int n_points = 2048;
    double dt = 0.005;
    double boundary_tol = 1e-8;  // reflection-contamination guard

    double dx() const { return (x_max - x_min) / n_points; }
    double x(int i) const { return x_min + i * dx(); }
    // FFT wavenumber of bin i (negative branch for i >= n/2).
    double k(int i) const;
    void validate() const;
};

// Two-component (plus optional third) complex amplitudes on the mesh — the
// oracle's state. Houses Psi(x,r,t) = Psi^g|g0> + Psi^e|e> (+ Psi^g1|g1>).
struct SpinorGrid {
    Grid grid;
    std::vector<cplx> g0;
    std::vector<cplx> e;
    std::vector<cplx> g1;  // empty = component absent

    static SpinorGrid zero(const Grid& g, bool with_g1 = false);
    double norm() const;
    double population(InternalState which) const;  // un-normalized
    // max |amp| over components at the two box edges, relative to peak
    double boundary_fraction() const;
};

struct DriveTerm {
    PhamdownBeams beams;
    double gamma = 0.0;
};

struct GridHamiltonian {
    PotentialSpec potential;
    std::optional<DriveTerm> drive;
};

enum class Observable { X, P, X2, P2, H, Norm };

// Pointwise evaluation of a Gaussian superposition on the mesh. Rejects
// terms whose effective support |x-x_c| <= 8 eps leaks outside the box.
SpinorGrid sample(const GaussianSuperposition& src, const Grid& grid, const PhysicalConstants& c);

// Strang-split spectral step: half kinetic - full position-space factor
// (exact 2x2 exponential of V + H_I) - half kinetic, |tau|/dt substeps.
// Negative tau evolves backward. Throws on boundary contamination.
void evolve(SpinorGrid& state, const GridHamiltonian& ham, double tau, const PhysicalConstants& c);

double observe(const SpinorGrid& state, Observable obs, const GridHamiltonian& ham,
               const PhysicalConstants& c);

struct StepTrace {
    double t = 0.0;
    double x_mean = 0.0;
    double p_mean = 0.0;
    double energy = 0.0;
    double norm = 0.0;
    double pop_g0 = 0.0;
    double pop_e = 0.0;
    double pop_g1 = 0.0;
};

struct SequenceRunResult {
    SpinorGrid state;
    std::vector<StepTrace> trace;
};

SequenceRunResult run_sequence(const SpinorGrid& state, const PulseSequence& seq,
                               const PhysicalConstants& c);

enum class CommutatorKind { M1, M2 };  // [H_I,[H0,H_I]] and [H0,[H0,H_I]]

// || M_k Psi || with p applied spectrally and H_I pointwise; H0 is the ideal
// harmonic Hamiltonian.
double commutator_norm(const SpinorGrid& state, CommutatorKind which, const PhamdownBeams& beams,
                       double gamma, const PhysicalConstants& c);

// || [H0_ho, V1] Psi || for a scalar (internal-state-diagonal) perturbation
// V1 = eval_perturbation(spec, .); feeds the second-order imperfection bound.
double imperfection_commutator_norm(const SpinorGrid& state, const PotentialSpec& spec,
                                    const PhysicalConstants& c);

// distance ||a - b|| over shared components
double state_distance(const SpinorGrid& a, const SpinorGrid& b);
void scale_state(SpinorGrid& s, cplx factor);

// Snapshots: CSV (x, Re/Im per component) and little-endian f64 binary with
// a JSON sidecar describing the grid.
void export_csv(const SpinorGrid& s, const std::string& path);
void export_binary(const SpinorGrid& s, const std::string& path_bin, const std::string& path_sidecar);

}  // namespace ssiss
