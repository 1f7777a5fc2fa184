#include "jscat/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace jscat::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 += a[i] * b[i];
        acc1 += a[i + 1] * b[i + 1];
        acc2 += a[i + 2] * b[i + 2];
        acc3 += a[i + 3] * b[i + 3];
    }
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

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void conv_range_scalar(const double* a, std::size_t na, const double* b, std::size_t nb,
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
        for (std::size_t j = 0; j <= j_hi - j_lo; ++j) o[j] += ai * bj[j];
    }
}

#if defined(__aarch64__)

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t v01 = vdupq_n_f64(0.0);  // lanes i%4==0, i%4==1
    float64x2_t v23 = vdupq_n_f64(0.0);  // lanes i%4==2, i%4==3
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        v01 = vaddq_f64(v01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        v23 = vaddq_f64(v23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double acc0 = vgetq_lane_f64(v01, 0), acc1 = vgetq_lane_f64(v01, 1);
    double acc2 = vgetq_lane_f64(v23, 0), acc3 = vgetq_lane_f64(v23, 1);
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

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] += a * x[i];
}

void conv_range_neon(const double* a, std::size_t na, const double* b, std::size_t nb,
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
        const float64x2_t va = vdupq_n_f64(ai);
        std::size_t j = 0;
        for (; j + 2 <= len; j += 2)
            vst1q_f64(o + j, vaddq_f64(vld1q_f64(o + j), vmulq_f64(va, vld1q_f64(bj + j))));
        for (; j < len; ++j) o[j] += ai * bj[j];
    }
}

#endif // __aarch64__

} // namespace detail

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*conv_range)(const double*, std::size_t, const double*, std::size_t,
                       double*, std::size_t, std::size_t);
    const char* name;
};

Dispatch select_backend() {
    const char* env = std::getenv("JSCAT_KERNELS");
    const bool force_scalar = env != nullptr && std::strcmp(env, "scalar") == 0;
#if defined(__x86_64__) || defined(_M_X64)
    if (!force_scalar && detail::avx2_available())
        return {detail::dot_avx2, detail::axpy_avx2, detail::conv_range_avx2, "avx2"};
#elif defined(__aarch64__)
    if (!force_scalar)
        return {detail::dot_neon, detail::axpy_neon, detail::conv_range_neon, "neon"};
#endif
    (void)force_scalar;
    return {detail::dot_scalar, detail::axpy_scalar, detail::conv_range_scalar, "scalar"};
}

const Dispatch& dispatch() {
    static const Dispatch d = select_backend();
    return d;
}

} // namespace

double dot(const double* a, const double* b, std::size_t n) {
    return dispatch().dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    dispatch().axpy(a, x, y, n);
}

void conv_range(const double* a, std::size_t na, const double* b, std::size_t nb,
                double* out, std::size_t k_lo, std::size_t k_hi) {
    dispatch().conv_range(a, na, b, nb, out, k_lo, k_hi);
}

const char* backend_name() { return dispatch().name; }

} // namespace jscat::kernels
