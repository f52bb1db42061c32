#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwp.hpp"

namespace ssiss {

// Pairing of a named closed-form bound with its inputs, the oracle-measured
// error (when available) and the margin. PASS means margin >= 0.
struct BoundReport {
    std::string name;
    std::string paper_eq;
    std::map<std::string, double> inputs;
    double bound_value = 0.0;
    std::optional<double> measured_error;

    double margin() const { return bound_value - measured_error.value_or(0.0); }
    bool pass() const { return !measured_error || margin() >= 0.0; }
};

// I_k = integral x^k exp(-(x-x0)^2/eps0^2) dx
//     = eps0 sqrt(pi) sum_{j even} C(k,j) (j-1)!!/sqrt(2^j) x0^{k-j} eps0^j
double gaussian_integral_ik(int k, double x0, double eps0);

// exp(-y^2)/(y + sqrt(y^2 + 4/pi)) >= integral_y^inf exp(-t^2) dt, y >= 0
double erfc_tail_bound(double y_m);

enum class BasicNormKind { NBAS1, NBAS2 };

// NBAS1 = ||x^l delta(x-center,eps) Psi|| (closed form),
// NBAS2 = ||x^l Theta(x-center,eps) Psi|| (adaptive quadrature), 0 <= l <= 6.
double basic_norm(BasicNormKind kind, int l, const GwpTerm& g, double center, double eps,
                  const PhysicalConstants& c);

// Worst-case trajectory summary feeding the first-order imperfection bound.
struct TrajectorySummary {
    double x_m = 0.0;       // max |x_c(t)|
    double eps_m = 1.0;     // max eps(t)
    double y_m_min = 1.0;   // min (x_L - x_c)/eps
    std::optional<double> p_max;  // optional precomputed max of P(x_L, eps, x_c)
};

// P(x_L, eps, x_c) of the first-order imperfection machinery (polynomial /
// erfc-tail combination entering bound (T/hbar)(m w^2/2) sqrt(P) e^{-y^2/2}).
double imperfection_p_function(double eps, double x_c, double y_m);

BoundReport imperfection_bound(const TrajectorySummary& traj, double x_L,
                               const PhysicalConstants& c, double T);

// (1/2)(1/3!)(tau^3/hbar^3)(m1_max + m2_max/2)
BoundReport trotter_bound(double m1_max, double m2_max, double tau, const PhysicalConstants& c);

struct EnergyParamBounds {
    double x_abs_max = 0.0;
    double p_abs_max = 0.0;
    double eps_sq_min = 0.0;
    double eps_sq_max = 0.0;
    double abs_w_min = 0.0;
    double abs_w_max = 0.0;

    double dev_ratio_lower(double x_L, double E, const PhysicalConstants& c) const;
};

EnergyParamBounds energy_param_bounds(double E, const PhysicalConstants& c);

enum class ExpansionBoundKind {
    LD_512,
    LD_513,
    MGWP_535,
    MGWP_539,
    SEQ_639,
    SEQ_654,
    SEQ_672,
    SEQ_689,
    RED_694,
    LDSTEP_6100,
};

// Inputs for the per-step closed-form bounds; each formula reads only the
// fields it needs.
struct ExpansionParams {
    double omega0 = 0.0;
    double delta_t = 0.0;
    double n = 1.0;
    double dk = 0.0;
    double eps0 = 1.0;
    double beta_c = 0.0;
    double beta_s = 0.0;
    double q_s = 0.0;
    double q_c = 0.0;
    std::optional<double> p_tr;  // preferred by LD_512/LD_513/LDSTEP_6100 when set
};

BoundReport expansion_bound(ExpansionBoundKind which, const ExpansionParams& p,
                            const PhysicalConstants& c);

// Gaussian absolute moment of the LD machinery:
//   int |y|^m |G|^2 dy with spread eps: (m-1)!!/sqrt(2^m) eps^m (m even),
//   [(m-1)/2]! eps^m / sqrt(pi) (m odd).
double ld_abs_moment(int m, double eps);

enum class BudgetFamily { FirstKind, TrotterSelectivity, LambDickeStep };

struct FamilyBound {
    BudgetFamily family;
    double per_sequence_bound = 0.0;
};

// Total budget of the n-sequence pulse: n * (sum of per-sequence family
// bounds); the LD family value scales as 1/n internally so its total is
// n-independent when p_tr is held fixed.
BoundReport total_error_budget(const std::vector<FamilyBound>& families, int n);

}  // namespace ssiss
