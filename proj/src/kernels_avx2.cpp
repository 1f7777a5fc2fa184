#include "jscat/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

// AVX2 variants. This translation unit is compiled with -mavx2; nothing here
// runs unless avx2_available() said yes. Multiplies and adds stay separate
// (no FMA) so results match the scalar reference bit for bit.

namespace jscat::kernels::detail {

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();  // lane j holds indices i % 4 == j
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(va, vb));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vacc);
    double acc0 = lane[0], acc1 = lane[1], acc2 = lane[2], acc3 = lane[3];
    for (; i < n; ++i) {
        switch (i & 3u) {
            case 0: acc0 += a[i] * b[i]; break;
            case 1: acc1 += a[i] * b[i]; break;
            case 2: acc2 += a[i] * b[i]; break;
            default: acc3 += a[i] * b[i]; break;
        }
    }
    return (acc0 + acc1) + (acc2 + acc3);
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void conv_range_avx2(const double* a, std::size_t na, const double* b, std::size_t nb,
                     double* out, std::size_t k_lo, std::size_t k_hi) {
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const std::size_t j_lo = k_lo > i ? k_lo - i : 0;
        if (j_lo >= nb) continue;
        if (k_hi < i) break;
        const std::size_t j_hi = std::min(nb - 1, k_hi - i);
        double* o = out + (i + j_lo - k_lo);
        const double* bj = b + j_lo;
        const std::size_t len = j_hi - j_lo + 1;
        const __m256d va = _mm256_set1_pd(ai);
        std::size_t j = 0;
        for (; j + 4 <= len; j += 4) {
            const __m256d vo = _mm256_loadu_pd(o + j);
            const __m256d vb = _mm256_loadu_pd(bj + j);
            _mm256_storeu_pd(o + j, _mm256_add_pd(vo, _mm256_mul_pd(va, vb)));
        }
        for (; j < len; ++j) o[j] += ai * bj[j];
    }
}

} // namespace jscat::kernels::detail

#endif // x86-64
