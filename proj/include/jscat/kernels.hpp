#pragma once

#include <cstddef>

// Arithmetic kernels under the coefficient algebra: scalar reference
// implementations plus SIMD variants selected once at startup (cpuid on
// x86-64, baseline NEON on aarch64, JSCAT_KERNELS=scalar overrides).
// Every backend is bit-identical to the scalar reference: accumulation
// order is fixed by contract and products are never fuse-contracted
// (kernel translation units build with -ffp-contract=off).

namespace jscat::kernels {

// y[i] += a * x[i] for i in [0, n).
void axpy(double a, const double* x, double* y, std::size_t n);

// Four-way interleaved dot product: lane j accumulates the terms with
// index i % 4 == j in ascending i, reduced as (l0 + l1) + (l2 + l3).
double dot(const double* a, const double* b, std::size_t n);

// Accumulates the convolution c[k] = sum_i a[i] * b[k-i] into
// out[k - k_lo] for k in [k_lo, k_hi] (full-convolution indices,
// 0 <= k <= na + nb - 2). out must hold k_hi - k_lo + 1 entries and is
// added to, not overwritten. Terms with a[i] == 0 are skipped; for a
// fixed output index the remaining terms arrive in ascending i.
void conv_range(const double* a, std::size_t na, const double* b, std::size_t nb,
                double* out, std::size_t k_lo, std::size_t k_hi);

// Name of the backend the dispatcher selected ("scalar", "avx2", "neon").
const char* backend_name();

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void conv_range_scalar(const double* a, std::size_t na, const double* b, std::size_t nb,
                       double* out, std::size_t k_lo, std::size_t k_hi);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void conv_range_avx2(const double* a, std::size_t na, const double* b, std::size_t nb,
                     double* out, std::size_t k_lo, std::size_t k_hi);
#endif

#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void conv_range_neon(const double* a, std::size_t na, const double* b, std::size_t nb,
                     double* out, std::size_t k_lo, std::size_t k_hi);
#endif

} // namespace detail

} // namespace jscat::kernels
