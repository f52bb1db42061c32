#include "kernels.hpp"

namespace ssiss::kernels {

namespace {

void cmul_s(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void axpy_s(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_s(cplx* a, cplx s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void su2_mix_s(cplx* g, cplx* e, const double* c, const cplx* f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx gv = g[i], ev = e[i];
        g[i] = c[i] * gv - std::conj(f[i]) * ev;
        e[i] = c[i] * ev + f[i] * gv;
    }
}

double norm2_s(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double wsum2_s(const cplx* a, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

cplx dot_s(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {cmul_s, axpy_s, scale_s, su2_mix_s, norm2_s, wsum2_s, dot_s};
    return ops;
}

}  // namespace ssiss::kernels
