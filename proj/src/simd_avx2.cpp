// AVX2 variants of the simd primitives. This translation unit is compiled
// with -mavx2; the dispatcher only installs it after a runtime CPU check.
#include "nlmc/simd.hpp"

#if defined(NLMC_HAVE_AVX2)

#include <immintrin.h>

namespace nlmc::simd {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d h = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, h));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(va, vb)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        s += d < 0 ? -d : d;
    }
    return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

// mul + add rather than fma: keeps every element bit-identical to the scalar
// reference (the whole project builds with -ffp-contract=off).
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    const __m256d va = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

extern const Ops kAvx2Ops;
const Ops kAvx2Ops{abs_diff_sum_avx2, dot_avx2, axpy_avx2, "avx2"};

}  // namespace nlmc::simd

#endif  // NLMC_HAVE_AVX2
