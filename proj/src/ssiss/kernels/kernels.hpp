#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace ssiss::kernels {

using cplx = std::complex<double>;

// Hot pointwise loops of the grid propagator. Scalar reference versions and
// AVX2+FMA variants share this table; the active table is picked at runtime
// from cpuid (override with SSISS_KERNELS=scalar|avx2).
struct Ops {
    // a[i] *= b[i]
    void (*cmul)(cplx* a, const cplx* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
    // a[i] *= s
    void (*scale)(cplx* a, cplx s, std::size_t n);
    // per-point SU(2) mix: g' = c g - conj(f) e,  e' = c e + f g
    void (*su2_mix)(cplx* g, cplx* e, const double* c, const cplx* f, std::size_t n);
    // sum |a[i]|^2
    double (*norm2)(const cplx* a, std::size_t n);
    // sum w[i] |a[i]|^2
    double (*wsum2)(const cplx* a, const double* w, std::size_t n);
    // sum conj(a[i]) b[i]
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const Ops& scalar_ops();
const Ops& avx2_ops();     // valid only when avx2_supported()
bool avx2_supported();

const Ops& active();
const char* active_name();

}  // namespace ssiss::kernels
