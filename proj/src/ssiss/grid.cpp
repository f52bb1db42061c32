#include "grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fft.hpp"
#include "json.hpp"
#include "kernels/kernels.hpp"

namespace ssiss {

namespace {

const kernels::Ops& K() { return kernels::active(); }

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double Grid::k(int i) const {
    const int half = n_points / 2;
    const int idx = (i < half) ? i : i - n_points;
    return 2.0 * kPi * idx / (n_points * dx());
}

void Grid::validate() const {
    if (!is_pow2(n_points) || n_points < 256)
        throw std::invalid_argument("Grid: n_points must be a power of two >= 256");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid: empty box");
    if (!(dt > 0.0)) throw std::invalid_argument("Grid: dt must be > 0");
}

SpinorGrid SpinorGrid::zero(const Grid& g, bool with_g1) {
    g.validate();
    SpinorGrid s;
    s.grid = g;
    s.g0.assign(size_t(g.n_points), cplx(0.0, 0.0));
    s.e.assign(size_t(g.n_points), cplx(0.0, 0.0));
    if (with_g1) s.g1.assign(size_t(g.n_points), cplx(0.0, 0.0));
    return s;
}

double SpinorGrid::norm() const {
    double s = K().norm2(g0.data(), g0.size()) + K().norm2(e.data(), e.size());
    if (!g1.empty()) s += K().norm2(g1.data(), g1.size());
    return std::sqrt(s * grid.dx());
}

double SpinorGrid::population(InternalState which) const {
    const std::vector<cplx>* c = which == InternalState::g0 ? &g0
                                 : which == InternalState::e ? &e
                                                             : &g1;
    return c->empty() ? 0.0 : K().norm2(c->data(), c->size()) * grid.dx();
}

double SpinorGrid::boundary_fraction() const {
    double peak = 0.0, edge = 0.0;
    auto scan = [&](const std::vector<cplx>& a) {
        if (a.empty()) return;
        for (const auto& v : a) peak = std::max(peak, std::abs(v));
        edge = std::max({edge, std::abs(a.front()), std::abs(a.back())});
    };
    scan(g0);
    scan(e);
    scan(g1);
    return peak > 0.0 ? edge / peak : 0.0;
}

SpinorGrid sample(const GaussianSuperposition& src, const Grid& grid, const PhysicalConstants& c) {
    bool need_g1 = false;
    for (const auto& t : src.terms) need_g1 |= (t.label == InternalState::g1);
    SpinorGrid out = SpinorGrid::zero(grid, need_g1);

    for (const auto& t : src.terms) {
        const double eps = derive_spread(t.term, c);
        if (t.term.x_c - 8.0 * eps < grid.x_min || t.term.x_c + 8.0 * eps > grid.x_max)
            throw std::invalid_argument("sample: term support leaks outside the box");
        std::vector<cplx>& dst = t.label == InternalState::g0 ? out.g0
                                 : t.label == InternalState::e ? out.e
                                                               : out.g1;
        for (int i = 0; i < grid.n_points; ++i) dst[size_t(i)] += t.term.eval(grid.x(i), c);
    }
    return out;
}

namespace {

struct StepFactors {
    std::vector<cplx> kin_half, kin_full;   // exp(-i hbar k^2 dt / 4m), squared
    std::vector<cplx> pot;                  // exp(-i V dt / hbar)
    std::vector<double> rot_c;              // driven: SU(2) rotation
    std::vector<cplx> rot_f;
    bool driven = false;
};

StepFactors make_factors(const Grid& g, const GridHamiltonian& ham, double h,
                         const PhysicalConstants& c) {
    StepFactors f;
    const int n = g.n_points;
    f.kin_half.resize(size_t(n));
    f.kin_full.resize(size_t(n));
    f.pot.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        const double k = g.k(i);
        const double ph = c.hbar * k * k * h / (4.0 * c.mass);
        f.kin_half[size_t(i)] = std::exp(cplx(0.0, -ph));
        f.kin_full[size_t(i)] = std::exp(cplx(0.0, -2.0 * ph));
        f.pot[size_t(i)] = std::exp(cplx(0.0, -eval_potential(ham.potential, g.x(i)) * h / c.hbar));
    }
    if (ham.drive) {
        f.driven = true;
        f.rot_c.resize(size_t(n));
        f.rot_f.resize(size_t(n));
        for (int i = 0; i < n; ++i) {
            const auto hi = interaction_hi(ham.drive->beams, ham.drive->gamma, g.x(i), c);
            const cplx heg = hi.eg();
            const double mag = std::abs(heg);
            const double theta = mag * h / c.hbar;
            f.rot_c[size_t(i)] = std::cos(theta);
            f.rot_f[size_t(i)] =
                (mag > 0.0) ? cplx(0.0, -1.0) * std::sin(theta) * (heg / mag) : cplx(0.0, 0.0);
        }
    }
    return f;
}

}  // namespace

void evolve(SpinorGrid& state, const GridHamiltonian& ham, double tau, const PhysicalConstants& c) {
    if (tau == 0.0) return;
    state.grid.validate();
    if (state.boundary_fraction() > state.grid.boundary_tol)
        throw std::runtime_error("evolve: boundary amplitude exceeds tolerance of peak");

    const int n = state.grid.n_points;
    const size_t un = size_t(n);
    const long substeps = std::max(1L, long(std::ceil(std::fabs(tau) / state.grid.dt - 1e-12)));
    const double h = tau / double(substeps);
    const StepFactors f = make_factors(state.grid, ham, h, c);
    SpectralTransform fft{un};

    // identically-zero components skip their transforms when nothing mixes
    const bool mix = f.driven;
    const bool g0_live = K().norm2(state.g0.data(), un) > 0.0 || mix;
    const bool e_live = K().norm2(state.e.data(), un) > 0.0 || mix;
    const bool g1_live = !state.g1.empty() && K().norm2(state.g1.data(), un) > 0.0;

    auto kinetic = [&](const std::vector<cplx>& phase) {
        auto apply = [&](std::vector<cplx>& a) {
            fft.forward(a.data());
            K().cmul(a.data(), phase.data(), un);
            fft.inverse(a.data());
        };
        if (g0_live) apply(state.g0);
        if (e_live) apply(state.e);
        if (g1_live) apply(state.g1);
    };
    auto position_factor = [&]() {
        if (g0_live) K().cmul(state.g0.data(), f.pot.data(), un);
        if (e_live) K().cmul(state.e.data(), f.pot.data(), un);
        if (g1_live) K().cmul(state.g1.data(), f.pot.data(), un);
        if (f.driven)
            K().su2_mix(state.g0.data(), state.e.data(), f.rot_c.data(), f.rot_f.data(), un);
    };

    kinetic(f.kin_half);
    for (long s = 0; s + 1 < substeps; ++s) {
        position_factor();
        kinetic(f.kin_full);
    }
    position_factor();
    kinetic(f.kin_half);

    if (state.boundary_fraction() > state.grid.boundary_tol)
        throw std::runtime_error("evolve: boundary contamination after step");
}

namespace {

double momentum_moment(const SpinorGrid& s, int power, const PhysicalConstants& c) {
    const size_t n = size_t(s.grid.n_points);
    SpectralTransform fft{n};
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) w[i] = std::pow(c.hbar * s.grid.k(int(i)), power);
    std::vector<cplx> tmp;
    double acc = 0.0, total = 0.0;
    auto add = [&](const std::vector<cplx>& a) {
        if (a.empty() || K().norm2(a.data(), n) == 0.0) return;
        tmp = a;
        fft.forward(tmp.data());
        acc += K().wsum2(tmp.data(), w.data(), n);
        total += K().norm2(tmp.data(), n);
    };
    add(s.g0);
    add(s.e);
    add(s.g1);
    return total > 0.0 ? acc / total : 0.0;
}

double position_moment(const SpinorGrid& s, int power) {
    const size_t n = size_t(s.grid.n_points);
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) w[i] = std::pow(s.grid.x(int(i)), power);
    double acc = 0.0, total = 0.0;
    auto add = [&](const std::vector<cplx>& a) {
        if (a.empty()) return;
        acc += K().wsum2(a.data(), w.data(), n);
        total += K().norm2(a.data(), n);
    };
    add(s.g0);
    add(s.e);
    add(s.g1);
    return total > 0.0 ? acc / total : 0.0;
}

}  // namespace

double observe(const SpinorGrid& state, Observable obs, const GridHamiltonian& ham,
               const PhysicalConstants& c) {
    switch (obs) {
        case Observable::Norm: return state.norm();
        case Observable::X: return position_moment(state, 1);
        case Observable::X2: return position_moment(state, 2);
        case Observable::P: return momentum_moment(state, 1, c);
        case Observable::P2: return momentum_moment(state, 2, c);
        case Observable::H: break;
    }
    const size_t n = size_t(state.grid.n_points);
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = eval_potential(ham.potential, state.grid.x(int(i)));
    double acc = 0.0, total = 0.0;
    auto add = [&](const std::vector<cplx>& a) {
        if (a.empty()) return;
        acc += K().wsum2(a.data(), v.data(), n);
        total += K().norm2(a.data(), n);
    };
    add(state.g0);
    add(state.e);
    add(state.g1);
    double h = momentum_moment(state, 2, c) / (2.0 * c.mass) + (total > 0.0 ? acc / total : 0.0);
    if (ham.drive) {
        double drv = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const auto hi = interaction_hi(ham.drive->beams, ham.drive->gamma,
                                           state.grid.x(int(i)), c);
            drv += 2.0 * std::real(std::conj(state.e[i]) * hi.eg() * state.g0[i]);
        }
        h += total > 0.0 ? drv / total : 0.0;
    }
    return h;
}

SequenceRunResult run_sequence(const SpinorGrid& state, const PulseSequence& seq,
                               const PhysicalConstants& c) {
    SequenceRunResult r;
    r.state = state;
    double t = 0.0;
    auto record = [&]() {
        StepTrace tr;
        GridHamiltonian ref{seq.steps.empty() ? PotentialSpec::harmonic(c) : seq.steps[0].potential,
                            std::nullopt};
        tr.t = t;
        tr.x_mean = observe(r.state, Observable::X, ref, c);
        tr.p_mean = observe(r.state, Observable::P, ref, c);
        tr.energy = observe(r.state, Observable::H, ref, c);
        tr.norm = r.state.norm();
        tr.pop_g0 = r.state.population(InternalState::g0);
        tr.pop_e = r.state.population(InternalState::e);
        tr.pop_g1 = r.state.population(InternalState::g1);
        r.trace.push_back(tr);
    };
    record();
    for (int rep = 0; rep < seq.repeats; ++rep) {
        for (const auto& s : seq.steps) {
            GridHamiltonian ham{s.potential, std::nullopt};
            if (s.kind == SequenceStep::Kind::Driven) ham.drive = DriveTerm{seq.beams, s.gamma};
            evolve(r.state, ham, s.tau, c);
            t += s.tau;
            record();
        }
    }
    return r;
}

namespace {

// H0_ho = p^2/2m + m w^2 x^2/2, p^2 applied spectrally per component.
void apply_h0_harmonic(SpinorGrid& s, const PhysicalConstants& c) {
    const size_t n = size_t(s.grid.n_points);
    SpectralTransform fft{n};
    std::vector<cplx> ksq(n), vx(n);
    for (size_t i = 0; i < n; ++i) {
        const double k = s.grid.k(int(i));
        ksq[i] = c.hbar * c.hbar * k * k / (2.0 * c.mass);
        const double x = s.grid.x(int(i));
        vx[i] = 0.5 * c.mass * c.omega * c.omega * x * x;
    }
    auto apply = [&](std::vector<cplx>& a) {
        if (a.empty()) return;
        std::vector<cplx> kin = a;
        fft.forward(kin.data());
        K().cmul(kin.data(), ksq.data(), n);
        fft.inverse(kin.data());
        K().cmul(a.data(), vx.data(), n);
        for (size_t i = 0; i < n; ++i) a[i] += kin[i];
    };
    apply(s.g0);
    apply(s.e);
    apply(s.g1);
}

void apply_hi(SpinorGrid& s, const PhamdownBeams& beams, double gamma,
              const PhysicalConstants& c) {
    const size_t n = size_t(s.grid.n_points);
    for (size_t i = 0; i < n; ++i) {
        const auto hi = interaction_hi(beams, gamma, s.grid.x(int(i)), c);
        const cplx heg = hi.eg();
        const cplx g = s.g0[i], e = s.e[i];
        s.g0[i] = std::conj(heg) * e;
        s.e[i] = heg * g;
    }
    if (!s.g1.empty()) std::fill(s.g1.begin(), s.g1.end(), cplx(0.0, 0.0));
}

double grid_norm_of(const SpinorGrid& s) { return s.norm(); }

}  // namespace

double commutator_norm(const SpinorGrid& state, CommutatorKind which, const PhamdownBeams& beams,
                       double gamma, const PhysicalConstants& c) {
    auto HI = [&](const SpinorGrid& in) {
        SpinorGrid out = in;
        apply_hi(out, beams, gamma, c);
        return out;
    };
    auto H0 = [&](const SpinorGrid& in) {
        SpinorGrid out = in;
        apply_h0_harmonic(out, c);
        return out;
    };
    auto sub = [](SpinorGrid a, const SpinorGrid& b, double w) {
        for (size_t i = 0; i < a.g0.size(); ++i) a.g0[i] -= w * b.g0[i];
        for (size_t i = 0; i < a.e.size(); ++i) a.e[i] -= w * b.e[i];
        for (size_t i = 0; i < a.g1.size(); ++i) a.g1[i] -= w * b.g1[i];
        return a;
    };

    if (which == CommutatorKind::M1) {
        // [HI,[H0,HI]] psi = 2 HI H0 HI psi - HI HI H0 psi - H0 HI HI psi
        SpinorGrid t1 = HI(H0(HI(state)));
        SpinorGrid t2 = HI(HI(H0(state)));
        SpinorGrid t3 = H0(HI(HI(state)));
        SpinorGrid res = sub(sub(t1, t2, 0.5), t3, 0.5);
        for (auto* a : {&res.g0, &res.e, &res.g1})
            for (auto& v : *a) v *= 2.0;
        return grid_norm_of(res);
    }
    // [H0,[H0,HI]] psi = H0 H0 HI psi - 2 H0 HI H0 psi + HI H0 H0 psi
    SpinorGrid t1 = H0(H0(HI(state)));
    SpinorGrid t2 = H0(HI(H0(state)));
    SpinorGrid t3 = HI(H0(H0(state)));
    SpinorGrid res = t1;
    for (size_t i = 0; i < res.g0.size(); ++i) res.g0[i] += t3.g0[i] - 2.0 * t2.g0[i];
    for (size_t i = 0; i < res.e.size(); ++i) res.e[i] += t3.e[i] - 2.0 * t2.e[i];
    for (size_t i = 0; i < res.g1.size(); ++i) res.g1[i] += t3.g1[i] - 2.0 * t2.g1[i];
    return grid_norm_of(res);
}

double imperfection_commutator_norm(const SpinorGrid& state, const PotentialSpec& spec,
                                    const PhysicalConstants& c) {
    const size_t n = size_t(state.grid.n_points);
    std::vector<cplx> v1(n);
    for (size_t i = 0; i < n; ++i) v1[i] = eval_perturbation(spec, state.grid.x(int(i)));

    auto V1 = [&](SpinorGrid s) {
        K().cmul(s.g0.data(), v1.data(), n);
        K().cmul(s.e.data(), v1.data(), n);
        if (!s.g1.empty()) K().cmul(s.g1.data(), v1.data(), n);
        return s;
    };
    auto H0 = [&](SpinorGrid s) {
        apply_h0_harmonic(s, c);
        return s;
    };
    SpinorGrid a = H0(V1(state));
    SpinorGrid b = V1(H0(state));
    for (size_t i = 0; i < a.g0.size(); ++i) a.g0[i] -= b.g0[i];
    for (size_t i = 0; i < a.e.size(); ++i) a.e[i] -= b.e[i];
    for (size_t i = 0; i < a.g1.size(); ++i) a.g1[i] -= b.g1[i];
    return a.norm();
}

double state_distance(const SpinorGrid& a, const SpinorGrid& b) {
    if (a.grid.n_points != b.grid.n_points)
        throw std::invalid_argument("state_distance: incompatible grids");
    double s = 0.0;
    auto add = [&](const std::vector<cplx>& u, const std::vector<cplx>& v) {
        const size_t n = std::max(u.size(), v.size());
        for (size_t i = 0; i < n; ++i) {
            const cplx du = (i < u.size() ? u[i] : cplx(0.0)) - (i < v.size() ? v[i] : cplx(0.0));
            s += std::norm(du);
        }
    };
    add(a.g0, b.g0);
    add(a.e, b.e);
    add(a.g1, b.g1);
    return std::sqrt(s * a.grid.dx());
}

void scale_state(SpinorGrid& s, cplx factor) {
    if (!s.g0.empty()) K().scale(s.g0.data(), factor, s.g0.size());
    if (!s.e.empty()) K().scale(s.e.data(), factor, s.e.size());
    if (!s.g1.empty()) K().scale(s.g1.data(), factor, s.g1.size());
}

void export_csv(const SpinorGrid& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_csv: cannot open " + path);
    out << "x,re_g0,im_g0,re_e,im_e";
    if (!s.g1.empty()) out << ",re_g1,im_g1";
    out << "\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (int i = 0; i < s.grid.n_points; ++i) {
        put(s.grid.x(i));
        for (const auto* a : {&s.g0, &s.e}) {
            out << ',';
            put((*a)[size_t(i)].real());
            out << ',';
            put((*a)[size_t(i)].imag());
        }
        if (!s.g1.empty()) {
            out << ',';
            put(s.g1[size_t(i)].real());
            out << ',';
            put(s.g1[size_t(i)].imag());
        }
        out << "\n";
    }
}

void export_binary(const SpinorGrid& s, const std::string& path_bin,
                   const std::string& path_sidecar) {
    std::ofstream out(path_bin, std::ios::binary);
    if (!out) throw std::runtime_error("export_binary: cannot open " + path_bin);
    auto dump = [&](const std::vector<cplx>& a) {
        if (!a.empty())
            out.write(reinterpret_cast<const char*>(a.data()),
                      std::streamsize(a.size() * sizeof(cplx)));
    };
    dump(s.g0);
    dump(s.e);
    dump(s.g1);

    nlohmann::ordered_json j;
    j["format"] = "interleaved little-endian f64 (re,im) per component";
    j["components"] = s.g1.empty() ? nlohmann::ordered_json::array({"g0", "e"})
                                   : nlohmann::ordered_json::array({"g0", "e", "g1"});
    j["grid"] = {{"x_min", s.grid.x_min},
                 {"x_max", s.grid.x_max},
                 {"n_points", s.grid.n_points},
                 {"dt", s.grid.dt}};
    std::ofstream side(path_sidecar);
    if (!side) throw std::runtime_error("export_binary: cannot open " + path_sidecar);
    side << j.dump(2) << "\n";
}

}  // namespace ssiss
