#include "potentials.hpp"

#include <cmath>

namespace ssiss {

PotentialSpec PotentialSpec::double_well(double x_L, PhysicalConstants c, double L, double L_h) {
    PotentialSpec p;
    p.variant = Variant::DoubleWell;
    p.consts = c;
    p.x_L = x_L;
    p.L = (L > 0.0) ? L : 2.0 * x_L;
    p.L_h = (L_h > 0.0) ? L_h : 0.5 * c.mass * c.omega * c.omega * x_L * x_L;
    p.validate();
    return p;
}

PotentialSpec PotentialSpec::smooth_double_well(double x_L, double eps_smooth, PhysicalConstants c,
                                                double L, double L_h) {
    PotentialSpec p = double_well(x_L, c, L, L_h);
    p.variant = Variant::SmoothDoubleWell;
    p.eps_smooth = eps_smooth;
    p.validate();
    return p;
}

void PotentialSpec::validate() const {
    consts.validate();
    if (variant == Variant::IdealHarmonic || variant == Variant::Free) return;
    const double lh_min = 0.5 * consts.mass * consts.omega * consts.omega * x_L * x_L;
    if (!(x_L > 0.0) || !(L > 0.0)) throw std::invalid_argument("PotentialSpec: x_L, L must be > 0");
    if (L_h < lh_min * (1.0 - 1e-12))
        throw std::invalid_argument("PotentialSpec: L_h below m w^2 x_L^2 / 2");
    if (variant == Variant::SmoothDoubleWell || variant == Variant::RealWorldWindow) {
        if (!(eps_smooth > 0.0) || !(eps_smooth < 0.2 * L))
            throw std::invalid_argument("PotentialSpec: need 0 < eps_smooth << L");
    }
    if (variant == Variant::RealWorldWindow) {
        if (!(x_R > x_L) || !(R > 5.0 * eps_smooth))
            throw std::invalid_argument("PotentialSpec: need x_R > x_L and R >> eps_smooth");
    }
}

double smooth_step(double x, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("smooth_step: eps must be > 0");
    return 0.5 * (1.0 + std::erf(x / eps));
}

double smooth_delta(double x, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("smooth_delta: eps must be > 0");
    return std::exp(-x * x / (eps * eps)) / (eps * kSqrtPi);
}

namespace {

double hard_step(double x) { return x > 0.0 ? 1.0 : 0.0; }

double perturbation_dw(const PotentialSpec& s, double x, bool smooth) {
    const double half_mw2 = 0.5 * s.consts.mass * s.consts.omega * s.consts.omega;
    const double th_l = smooth ? smooth_step(x - s.x_L, s.eps_smooth) : hard_step(x - s.x_L);
    const double th_r = smooth ? smooth_step(s.x_L + s.L - x, s.eps_smooth) : hard_step(s.x_L + s.L - x);
    return s.L_h * th_l * th_r - half_mw2 * x * x * th_l;
}

// Mirror barrier on the left for the real-world window: height R_h on
// [-x_R-R, -x_R], zero beyond.
double perturbation_rw(const PotentialSpec& s, double x) {
    const double half_mw2 = 0.5 * s.consts.mass * s.consts.omega * s.consts.omega;
    const double th_l = smooth_step(-x - s.x_R, s.eps_smooth);
    const double th_r = smooth_step(s.x_R + s.R + x, s.eps_smooth);
    return perturbation_dw(s, x, true) + s.R_h * th_l * th_r - half_mw2 * x * x * th_l;
}

}  // namespace

double eval_perturbation(const PotentialSpec& spec, double x) {
    switch (spec.variant) {
        case PotentialSpec::Variant::Free:
        case PotentialSpec::Variant::IdealHarmonic: return 0.0;
        case PotentialSpec::Variant::DoubleWell: return perturbation_dw(spec, x, false);
        case PotentialSpec::Variant::SmoothDoubleWell: return perturbation_dw(spec, x, true);
        case PotentialSpec::Variant::RealWorldWindow: return perturbation_rw(spec, x);
    }
    return 0.0;
}

double eval_potential(const PotentialSpec& spec, double x) {
    if (spec.variant == PotentialSpec::Variant::Free) return 0.0;
    const auto& c = spec.consts;
    return 0.5 * c.mass * c.omega * c.omega * x * x + eval_perturbation(spec, x);
}

GaussianProduct gaussian_product(double z1, double eps1, double z2, double eps2) {
    if (!(eps1 > 0.0) || !(eps2 > 0.0))
        throw std::invalid_argument("gaussian_product: widths must be > 0");
    const double s = eps1 * eps1 + eps2 * eps2;
    GaussianProduct g;
    g.eps0_sq = eps1 * eps1 * eps2 * eps2 / s;
    g.x0 = (eps2 * eps2 * z1 + eps1 * eps1 * z2) / s;
    g.prefactor = std::exp(-(z1 - z2) * (z1 - z2) / s);
    return g;
}

}  // namespace ssiss
