#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "kernels/kernels.hpp"

namespace ssiss {

namespace {

std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd;
    fftw_plan bwd;
};

PlanPair& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    fftw_complex* buf = fftw_alloc_complex(n);
    PlanPair p;
    // FFTW_UNALIGNED: plans must run on arbitrary user arrays.
    p.fwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    return cache.emplace(n, p).first->second;
}

}  // namespace

SpectralTransform::SpectralTransform(std::size_t n) : n_(n) {
    auto& p = plans_for(n);
    fwd_ = p.fwd;
    bwd_ = p.bwd;
}

void SpectralTransform::forward(std::complex<double>* data) const {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), d, d);
}

void SpectralTransform::inverse(std::complex<double>* data) const {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), d, d);
    kernels::active().scale(data, {1.0 / double(n_), 0.0}, n_);
}

}  // namespace ssiss
