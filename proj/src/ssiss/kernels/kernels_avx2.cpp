#include <immintrin.h>

#include "kernels.hpp"

// Two interleaved complex doubles per 256-bit vector. Tails fall back to
// plain loops.

namespace ssiss::kernels {

namespace {

inline __m256d cmul_pd(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);                 // [br0 br0 br1 br1]
    const __m256d b_im = _mm256_permute_pd(b, 0xF);            // [bi0 bi0 bi1 bi1]
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);            // [ai0 ar0 ai1 ar1]
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// conj(f) * e
inline __m256d conj_mul_pd(__m256d f, __m256d e) {
    const __m256d f_re = _mm256_movedup_pd(f);
    const __m256d f_im = _mm256_permute_pd(f, 0xF);
    const __m256d e_sw = _mm256_permute_pd(e, 0x5);
    // re = fr*er + fi*ei ; im = fr*ei - fi*er  -> fmsubadd
    return _mm256_fmsubadd_pd(e, f_re, _mm256_mul_pd(e_sw, f_im));
}

inline double hsum_pd(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void cmul_v(cplx* a, const cplx* b, std::size_t n) {
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul_pd(va, vb));
    }
    for (; i < n; ++i) a[i] *= b[i];
}

void axpy_v(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    auto* py = reinterpret_cast<double*>(y);
    const auto* px = reinterpret_cast<const double*>(x);
    const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul_pd(vx, va)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_v(cplx* a, cplx s, std::size_t n) {
    auto* pa = reinterpret_cast<double*>(a);
    const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul_pd(va, vs));
    }
    for (; i < n; ++i) a[i] *= s;
}

void su2_mix_v(cplx* g, cplx* e, const double* c, const cplx* f, std::size_t n) {
    auto* pg = reinterpret_cast<double*>(g);
    auto* pe = reinterpret_cast<double*>(e);
    const auto* pf = reinterpret_cast<const double*>(f);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vg = _mm256_loadu_pd(pg + 2 * i);
        const __m256d ve = _mm256_loadu_pd(pe + 2 * i);
        const __m256d vf = _mm256_loadu_pd(pf + 2 * i);
        const __m256d vc = _mm256_setr_pd(c[i], c[i], c[i + 1], c[i + 1]);
        const __m256d g1 = _mm256_fmsub_pd(vc, vg, conj_mul_pd(vf, ve));
        const __m256d e1 = _mm256_fmadd_pd(vc, ve, cmul_pd(vf, vg));
        _mm256_storeu_pd(pg + 2 * i, g1);
        _mm256_storeu_pd(pe + 2 * i, e1);
    }
    for (; i < n; ++i) {
        const cplx gv = g[i], ev = e[i];
        g[i] = c[i] * gv - std::conj(f[i]) * ev;
        e[i] = c[i] * ev + f[i] * gv;
    }
}

double norm2_v(const cplx* a, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum_pd(acc);
    for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double wsum2_v(const cplx* a, const double* w, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vw = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(va, va), vw, acc);
    }
    double s = hsum_pd(acc);
    for (; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

cplx dot_v(const cplx* a, const cplx* b, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc = _mm256_add_pd(acc, conj_mul_pd(va, vb));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    cplx r{_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
    for (; i < n; ++i) {
        r += cplx(a[i].real() * b[i].real() + a[i].imag() * b[i].imag(),
                  a[i].real() * b[i].imag() - a[i].imag() * b[i].real());
    }
    return r;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops = {cmul_v, axpy_v, scale_v, su2_mix_v, norm2_v, wsum2_v, dot_v};
    return ops;
}

}  // namespace ssiss::kernels
