#include "gwp.hpp"

#include <cmath>
#include <stdexcept>

namespace ssiss {

namespace {

constexpr int kMaxPrefactorDegree = 6;

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

cplx eval_poly(const std::vector<cplx>& p, cplx x) {
    if (p.empty()) return {1.0, 0.0};
    cplx r = 0.0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

}  // namespace

void GwpTerm::validate() const {
    if (!(dx2 > 0.0)) throw std::invalid_argument("GwpTerm: dx2 must be > 0");
    if (prefactor_coeffs.size() > kMaxPrefactorDegree + 1)
        throw std::invalid_argument("GwpTerm: prefactor degree capped at 6");
}

cplx GwpTerm::eval(double x, const PhysicalConstants& c) const {
    const cplx W = linewidth(c);
    const cplx norm_fac = std::pow(dx2 / (2.0 * kPi), 0.25) / std::sqrt(W);
    const double dxc = x - x_c;
    const cplx expo = -dxc * dxc / (4.0 * W) + cplx(0.0, p_c * x / c.hbar + global_phase);
    return amplitude * norm_fac * eval_poly(prefactor_coeffs, cplx(x, 0.0)) * std::exp(expo);
}

double derive_spread(const GwpTerm& g, const PhysicalConstants& c) {
    g.validate();
    const double s = c.hbar * g.t0_param / (2.0 * c.mass * std::sqrt(g.dx2));
    return std::sqrt(2.0 * (g.dx2 + s * s));
}

double energy(const GwpTerm& g, const PhysicalConstants& c) {
    g.validate();
    if (!g.pure()) throw std::invalid_argument("energy: only stated for pure GWPs");
    const double eps = derive_spread(g, c);
    return g.p_c * g.p_c / (2.0 * c.mass) + 0.5 * c.mass * c.omega * c.omega * g.x_c * g.x_c +
           0.25 * c.mass * c.omega * c.omega * eps * eps +
           0.25 * c.hbar * c.hbar / (2.0 * c.mass * g.dx2);
}

namespace {

// One exact harmonic chunk, |w dt| <= ~0.4 so every complex root stays on
// the principal branch. All expressions are written with the 1/sin factors
// cancelled algebraically, so dt -> 0 is regular.
GwpTerm harmonic_chunk(const GwpTerm& g, double dt, const PhysicalConstants& pc) {
    const double m = pc.mass, w = pc.omega, hb = pc.hbar;
    const double th = w * dt, c = std::cos(th), s = std::sin(th);
    const cplx W = g.linewidth(pc);
    const cplx I(0.0, 1.0);

    const double xc1 = g.x_c * c + g.p_c / (m * w) * s;
    const double pc1 = g.p_c * c - m * w * g.x_c * s;

    const cplx D = hb * s - 2.0 * I * m * w * c * W;      // never zero (Re W > 0)
    const cplx W1 = hb * (2.0 * I * m * w * c * W - hb * s) / (2.0 * m * w * (I * hb * c - 2.0 * m * w * s * W));

    const cplx beta = g.x_c / (2.0 * W) + I * g.p_c / hb;
    const cplx Q0 = -g.x_c * g.x_c / (4.0 * W) + beta * beta * hb * s * W / D;

    // C_new = C_old / sqrt(c + i hb s/(2 m w W)) * exp{Q0 + xc1^2/(4 W1)}
    const cplx root = std::sqrt(c + I * hb * s / (2.0 * m * w * W));
    const cplx factor = std::exp(Q0 + xc1 * xc1 / (4.0 * W1)) / root;

    GwpTerm out = g;
    out.x_c = xc1;
    out.p_c = pc1;
    out.dx2 = W1.real();
    out.t0_param = 2.0 * m * W1.imag() / hb;

    // Fold the change of standard-form normalization into the same factor.
    const cplx norm_old = std::pow(g.dx2 / (2.0 * kPi), 0.25) / std::sqrt(W);
    const cplx norm_new = std::pow(out.dx2 / (2.0 * kPi), 0.25) / std::sqrt(W1);
    const cplx F = factor * norm_old / norm_new;

    out.amplitude = g.amplitude * std::abs(F);
    out.global_phase = g.global_phase + std::arg(F);
    return out;
}

}  // namespace

GwpTerm evolve_quadratic(const GwpTerm& g, QuadraticHamiltonian h, double tau,
                         const PhysicalConstants& c) {
    g.validate();
    c.validate();
    if (!g.pure()) throw std::invalid_argument("evolve_quadratic: pure GWP required");
    if (tau == 0.0) return g;

    if (h == QuadraticHamiltonian::Free) {
        GwpTerm out = g;
        out.x_c = g.x_c + g.p_c * tau / c.mass;
        out.t0_param = g.t0_param + tau;
        out.global_phase = g.global_phase - g.p_c * g.p_c * tau / (2.0 * c.mass * c.hbar);
        return out;
    }

    const int chunks = std::max(1, int(std::ceil(std::abs(c.omega * tau) / 0.4)));
    const double dt = tau / chunks;
    GwpTerm cur = g;
    for (int i = 0; i < chunks; ++i) cur = harmonic_chunk(cur, dt, c);
    return cur;
}

cplx complex_gaussian_moment(int k, cplx alpha, cplx z) {
    if (k < 0) throw std::invalid_argument("complex_gaussian_moment: k >= 0");
    if (!(alpha.real() > 0.0))
        throw std::invalid_argument("complex_gaussian_moment: Re(alpha) must be > 0");
    cplx sum = 0.0;
    for (int j = 0; j <= k; j += 2) {
        // central moment (j-1)!!/(2 alpha)^{j/2}, integer power so no branch issue
        cplx mu = dbl_factorial(j - 1);
        for (int q = 0; q < j / 2; ++q) mu /= (2.0 * alpha);
        sum += binom(k, j) * mu * std::pow(z, k - j);
    }
    return std::sqrt(kPi / alpha) * sum;
}

cplx overlap_terms(const GwpTerm& a, const GwpTerm& b, const PhysicalConstants& c) {
    a.validate();
    b.validate();
    const cplx I(0.0, 1.0);
    const cplx Wa = std::conj(a.linewidth(c));
    const cplx Wb = b.linewidth(c);

    const cplx alpha = 1.0 / (4.0 * Wa) + 1.0 / (4.0 * Wb);
    const cplx beta = a.x_c / (2.0 * Wa) + b.x_c / (2.0 * Wb) + I * (b.p_c - a.p_c) / c.hbar;
    const cplx gamma = -a.x_c * a.x_c / (4.0 * Wa) - b.x_c * b.x_c / (4.0 * Wb);
    const cplx z = beta / (2.0 * alpha);

    const cplx ca = std::conj(a.amplitude * std::exp(I * a.global_phase) *
                              std::pow(a.dx2 / (2.0 * kPi), 0.25) / std::sqrt(a.linewidth(c)));
    const cplx cb = b.amplitude * std::exp(I * b.global_phase) *
                    std::pow(b.dx2 / (2.0 * kPi), 0.25) / std::sqrt(Wb);

    // conj(Pa)(x) * Pb(x), coefficients in plain x
    std::vector<cplx> pa = a.prefactor_coeffs, pb = b.prefactor_coeffs;
    if (pa.empty()) pa = {cplx(1.0, 0.0)};
    if (pb.empty()) pb = {cplx(1.0, 0.0)};
    for (auto& q : pa) q = std::conj(q);
    std::vector<cplx> prod(pa.size() + pb.size() - 1, cplx(0.0, 0.0));
    for (size_t i = 0; i < pa.size(); ++i)
        for (size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];

    cplx integral = 0.0;
    for (size_t k = 0; k < prod.size(); ++k)
        if (prod[k] != cplx(0.0, 0.0))
            integral += prod[k] * complex_gaussian_moment(int(k), alpha, z);

    return ca * cb * std::exp(gamma + beta * beta / (4.0 * alpha)) * integral;
}

cplx overlap(const GaussianSuperposition& a, const GaussianSuperposition& b,
             const PhysicalConstants& c) {
    cplx s = 0.0;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            if (ta.label == tb.label) s += overlap_terms(ta.term, tb.term, c);
    return s;
}

double GaussianSuperposition::norm(const PhysicalConstants& c) const {
    return std::sqrt(std::max(0.0, overlap(*this, *this, c).real()));
}

GwpTerm modulate(const GwpTerm& g, double k_lin, cplx c_quad, const PhysicalConstants& c) {
    g.validate();
    const cplx W = g.linewidth(c);
    const cplx invW1 = 1.0 / W + 4.0 * c_quad;
    const cplx W1 = 1.0 / invW1;
    if (!(W1.real() > 0.0))
        throw std::invalid_argument("modulate: resulting linewidth not normalizable");

    GwpTerm out = g;
    out.p_c = g.p_c + c.hbar * k_lin;
    out.dx2 = W1.real();
    out.t0_param = 2.0 * c.mass * W1.imag() / c.hbar;

    // exp(i k (x-x_c)) = exp(i k x) exp(-i k x_c); the width change also
    // rescales the standard-form normalization.
    const cplx norm_old = std::pow(g.dx2 / (2.0 * kPi), 0.25) / std::sqrt(W);
    const cplx norm_new = std::pow(out.dx2 / (2.0 * kPi), 0.25) / std::sqrt(W1);
    const cplx F = std::exp(cplx(0.0, -k_lin * g.x_c)) * norm_old / norm_new;
    out.amplitude = g.amplitude * std::abs(F);
    out.global_phase = g.global_phase + std::arg(F);
    return out;
}

std::vector<cplx> derivative_polynomial(const GwpTerm& g, int j, const PhysicalConstants& c) {
    g.validate();
    if (!g.pure()) throw std::invalid_argument("derivative_polynomial: pure GWP required");
    if (j < 0 || j > 6) throw std::invalid_argument("derivative_polynomial: 0 <= j <= 6");

    const cplx W = g.linewidth(c);
    const cplx I(0.0, 1.0);
    // Q1(x) = -(x - x_c)/(2W) + i p_c/hbar
    const std::vector<cplx> q1 = {g.x_c / (2.0 * W) + I * g.p_c / c.hbar, -1.0 / (2.0 * W)};

    std::vector<cplx> q = {cplx(1.0, 0.0)};  // Q0 = 1
    for (int step = 0; step < j; ++step) {
        std::vector<cplx> next(q.size() + 1, cplx(0.0, 0.0));
        for (size_t i = 1; i < q.size(); ++i) next[i - 1] += double(i) * q[i];  // Q'
        for (size_t i = 0; i < q.size(); ++i) {                                 // Q * Q1
            next[i] += q[i] * q1[0];
            next[i + 1] += q[i] * q1[1];
        }
        q = std::move(next);
    }
    return q;
}

}  // namespace ssiss
