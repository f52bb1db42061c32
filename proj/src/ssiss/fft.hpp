#pragma once

#include <complex>
#include <cstddef>

namespace ssiss {

// In-place complex FFT pair over one fixed length, backed by FFTW (plans
// cached per length, FFTW_ESTIMATE so results are run-to-run deterministic).
// Inverse is normalized by 1/n. Thread-safe: plan creation is serialized,
// execution on distinct arrays is concurrent-safe.
class SpectralTransform {
   public:
    explicit SpectralTransform(std::size_t n);
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;
    std::size_t size() const { return n_; }

   private:
    std::size_t n_;
    void* fwd_;  // fftw_plan
    void* bwd_;
};

}  // namespace ssiss
