#include "pulses.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "grid.hpp"
#include "json.hpp"
#include "kernels/kernels.hpp"

namespace ssiss {

namespace {

constexpr double kGammaTol = 1e-12;

bool gamma_allowed(double gamma) {
    for (double g : {0.0, 0.5 * kPi, kPi, 1.5 * kPi})
        if (std::fabs(gamma - g) < kGammaTol) return true;
    return false;
}

}  // namespace

void PhamdownBeams::validate() const {
    if (!(omega0 > 0.0)) throw std::invalid_argument("PhamdownBeams: omega0 must be > 0");
    if (std::fabs(alpha - 0.25 * kPi) > kGammaTol)
        throw std::invalid_argument("PhamdownBeams: alpha is fixed at pi/4 for sequences in scope");
}

Interaction2x2 interaction_hi(const PhamdownBeams& beams, double gamma, double x,
                              const PhysicalConstants& c) {
    if (!gamma_allowed(gamma))
        throw std::invalid_argument("interaction_hi: gamma must be one of {0, pi/2, pi, 3pi/2}");
    const double amp = 4.0 * c.hbar * beams.omega0 * std::cos(0.5 * beams.dk() * x - beams.alpha);
    const double phi = 0.5 * beams.ksum() * x - gamma;
    const double m = beams.window ? beams.window->mask(x) : 1.0;
    return {m * amp * std::cos(phi), -m * amp * std::sin(phi)};
}

PulseSequence build_sequence(SequenceKind kind, double delta_t, int n,
                             const PotentialSpec& potential, const PhamdownBeams& beams,
                             int k_period) {
    if (!(delta_t > 0.0)) throw std::invalid_argument("build_sequence: delta_t must be > 0");
    if (n < 1) throw std::invalid_argument("build_sequence: n must be >= 1");
    beams.validate();
    potential.validate();

    const double w = potential.consts.omega;
    const double tau_full = delta_t / std::sqrt(double(n));
    const double tau_half = delta_t / std::sqrt(4.0 * double(n));

    PulseSequence seq;
    seq.kind = kind;
    seq.beams = beams;
    seq.repeats = n;

    PotentialSpec ideal = PotentialSpec::harmonic(potential.consts);

    auto free_step = [](double tau, const PotentialSpec& pot) {
        SequenceStep s;
        s.kind = SequenceStep::Kind::FieldFree;
        s.tau = tau;
        s.potential = pot;
        return s;
    };
    auto driven_step = [](double gamma, double tau, const PotentialSpec& pot) {
        SequenceStep s;
        s.kind = SequenceStep::Kind::Driven;
        s.tau = tau;
        s.gamma = gamma;
        s.potential = pot;
        return s;
    };

    // Driven phases in application order (right-to-left in the operator
    // product): 3pi/2, pi, pi/2, 0.
    const double gammas[4] = {1.5 * kPi, kPi, 0.5 * kPi, 0.0};

    switch (kind) {
        case SequenceKind::TheoreticalA: {
            // Ideal harmonic field, un-windowed beams, inverse field-free
            // propagators as negative-duration markers.
            seq.beams.window.reset();
            seq.steps.push_back(free_step(-tau_half, ideal));
            for (int j = 0; j < 4; ++j) {
                seq.steps.push_back(driven_step(gammas[j], tau_full, ideal));
                seq.steps.push_back(free_step(j < 3 ? -tau_full : -tau_half, ideal));
            }
            break;
        }
        case SequenceKind::ExperimentalA: {
            // exp[+i H0 tau] -> exp[-i H tau'] with w tau' = 2k pi - w tau,
            // up to a recorded global phase of pi per replaced propagator.
            const double t1p = (2.0 * k_period * kPi - w * tau_half) / w;
            const double t1 = (2.0 * k_period * kPi - w * tau_full) / w;
            if (!(t1 > 0.0) || !(t1p > 0.0))
                throw std::invalid_argument("build_sequence: delta_t too long for k_period");
            seq.steps.push_back(free_step(t1p, potential));
            for (int j = 0; j < 4; ++j) {
                seq.steps.push_back(driven_step(gammas[j], tau_full, potential));
                seq.steps.push_back(free_step(j < 3 ? t1 : t1p, potential));
            }
            seq.global_phase = std::fmod(5.0 * kPi * k_period, 2.0 * kPi);
            break;
        }
        case SequenceKind::ImprovedB: {
            // Eq-(6.1b)-style composition: eight driven blocks of duration
            // delta_t/sqrt(2n), each wrapped by inverse half-steps.
            seq.beams.window.reset();
            const double tau_b = delta_t / std::sqrt(2.0 * double(n));
            const double half_b = 0.5 * tau_b;
            const double order[8] = {0.5 * kPi, 0.0,      1.5 * kPi, kPi,
                                     1.5 * kPi, kPi,      0.5 * kPi, 0.0};
            for (double gmm : order) {
                seq.steps.push_back(free_step(-half_b, ideal));
                seq.steps.push_back(driven_step(gmm, tau_b, ideal));
                seq.steps.push_back(free_step(-half_b, ideal));
            }
            break;
        }
    }
    return seq;
}

std::string PulseSequence::to_json() const {
    nlohmann::ordered_json j;
    switch (kind) {
        case SequenceKind::TheoreticalA: j["kind"] = "theoretical_a"; break;
        case SequenceKind::ExperimentalA: j["kind"] = "experimental_a"; break;
        case SequenceKind::ImprovedB: j["kind"] = "improved_b"; break;
    }
    j["repeats"] = repeats;
    j["global_phase"] = global_phase;
    j["beams"] = {{"omega0", beams.omega0}, {"k0", beams.k0}, {"k1", beams.k1},
                  {"alpha", beams.alpha}};
    if (beams.window) {
        j["beams"]["window"] = {{"x_lo", beams.window->x_lo},
                                {"x_hi", beams.window->x_hi},
                                {"eps_smooth", beams.window->eps_smooth}};
    }
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        nlohmann::ordered_json js;
        js["kind"] = s.kind == SequenceStep::Kind::FieldFree ? "field_free" : "driven";
        js["tau"] = s.tau;
        if (s.kind == SequenceStep::Kind::Driven) js["gamma"] = s.gamma;
        j["steps"].push_back(js);
    }
    return j.dump(2);
}

void driven_rotation_exact(SpinorGrid& state, const PhamdownBeams& beams, double gamma, double tau,
                           const PhysicalConstants& c) {
    const int n = state.grid.n_points;
    std::vector<double> cth(n);
    std::vector<cplx> f(n);
    for (int i = 0; i < n; ++i) {
        const auto hi = interaction_hi(beams, gamma, state.grid.x(i), c);
        const cplx heg = hi.eg();
        const double mag = std::abs(heg);
        const double theta = mag * tau / c.hbar;
        cth[i] = std::cos(theta);
        f[i] = (mag > 0.0) ? cplx(0.0, -1.0) * std::sin(theta) * (heg / mag) : cplx(0.0, 0.0);
    }
    kernels::active().su2_mix(state.g0.data(), state.e.data(), cth.data(), f.data(), size_t(n));
}

void target_propagator(SpinorGrid& state, const PhamdownBeams& beams, double delta_t,
                       const PhysicalConstants& c) {
    const int n = state.grid.n_points;
    const double amp = 4.0 * beams.omega0 * delta_t;
    std::vector<cplx> pg(n), pe(n);
    for (int i = 0; i < n; ++i) {
        const double cosf = std::cos(0.5 * beams.dk() * state.grid.x(i) - 0.25 * kPi);
        const double theta = amp * amp * cosf * cosf;  // I_z eigenvalues -+ 1/2
        pg[i] = std::exp(cplx(0.0, +0.5 * theta));
        pe[i] = std::exp(cplx(0.0, -0.5 * theta));
    }
    kernels::active().cmul(state.g0.data(), pg.data(), size_t(n));
    kernels::active().cmul(state.e.data(), pe.data(), size_t(n));
}

}  // namespace ssiss
