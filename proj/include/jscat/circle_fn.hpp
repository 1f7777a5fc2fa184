#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "jscat/error.hpp"

namespace jscat {

using cdouble = std::complex<double>;

// Hard cap on coefficient windows. Exceeding it means the experiment is
// ill-posed (e.g. expanding across a pole on the circle), not that more
// memory is needed.
inline constexpr int kMaxWindow = 1 << 18;

// f(t) = sum_m c_m t^m with real c_m and finitely many nonzero terms,
// viewed as a function on the unit circle T = {|t| = 1}. Real coefficients
// encode the symmetry conj(f(t)) = f(conj(t)). Instances are immutable
// values; all algebra returns new objects.
class CircleFunction {
public:
    CircleFunction() = default; // the zero function

    static CircleFunction monomial(int m, double a = 1.0);
    static CircleFunction constant(double a);
    static CircleFunction from_coeffs(const std::map<int, double>& coeffs);
    // Coefficients c[i] at indices lo + i; zero edges are trimmed.
    static CircleFunction from_span(int lo, std::vector<double> c);

    bool is_zero() const { return c_.empty(); }
    int min_index() const { return is_zero() ? 0 : lo_; }
    int max_index() const { return is_zero() ? 0 : lo_ + int(c_.size()) - 1; }
    int window() const;
    double coeff(int m) const;
    std::map<int, double> coeffs() const;
    const std::vector<double>& raw() const { return c_; }

    CircleFunction operator+(const CircleFunction& g) const;
    CircleFunction operator-(const CircleFunction& g) const;
    CircleFunction operator*(const CircleFunction& g) const; // coefficient convolution
    CircleFunction scaled(double a) const;
    CircleFunction shifted(int k) const;   // multiplication by t^k (exact index shift)
    CircleFunction involute() const;       // f(t) -> f(1/t): coefficient c_m moves to -m
    // On T, conj(f(t)) = f(conj(t)) = involute(f)(t) for real coefficients.
    CircleFunction conj_on_circle() const { return involute(); }

    CircleFunction riesz_plus() const;     // keep indices m >= 0
    CircleFunction riesz_minus() const;    // keep indices m < 0

    // Zero out coefficients with |c_m| <= rel_eps * max|c| and trim edges.
    CircleFunction cleaned(double rel_eps) const;

    // Evaluate at a point of the closed disk. Functions with negative-index
    // coefficients are boundary values only: |z| must be 1 (to 1e-12).
    cdouble eval(cdouble z) const;

    double max_abs_coeff() const;
    double l2_norm() const; // sqrt(sum c_m^2) = L2(T) norm under normalized measure

    bool operator==(const CircleFunction& g) const { return lo_ == g.lo_ && c_ == g.c_; }

private:
    CircleFunction(int lo, std::vector<double> c) : lo_(lo), c_(std::move(c)) {}
    void trim();

    int lo_ = 0;
    std::vector<double> c_; // c_[i] is the coefficient of t^(lo_ + i)
};

// Multiplication by the uniformizer z(t) = t + 1/t (maps T onto [-2, 2]).
CircleFunction mul_by_z(const CircleFunction& f);

// Samples of a CircleFunction on the equispaced grid t_j = exp(2*pi*i*j/size).
struct GridSampling {
    std::size_t size = 0;
    std::vector<cdouble> values;
};

// size must be a power of two with size >= 4 * f.window() (alias-free for
// products of two functions of equal window).
GridSampling sample(const CircleFunction& f, std::size_t size);

// Smallest power of two >= max(minimum, 4 * window).
std::size_t grid_for(int window, std::size_t minimum = 4096);

// Symmetric inner function t^degree * prod (t - a)/(1 - a t) with real
// zeros |a| < 1, expanded as a truncated series. Throws if the truncation
// cannot meet tol_inner (achieved defect reported in the message); the
// measured grid defect max| |phi| - 1 | is stored to *defect_out if given.
CircleFunction inner_symmetric_factory(int degree, const std::vector<double>& real_zeros,
                                       double tol_inner = 1e-10, double* defect_out = nullptr);

struct OuterReport {
    bool conclusive = false; // false when f(0) = 0 or f has negative indices
    bool is_outer = false;
    double defect = 0.0;     // | log|f(0)| - grid mean of log|f| |
    double log_mean = 0.0;
    std::size_t excluded = 0; // grid points with |f| < 1e-13, left out of the mean
};

// Outer test via the mean of log|f| on the circle: f is outer iff
// log|f(0)| equals the mean. Boundary zeros of f cost the quadrature a
// deterministic O(log(grid)/grid) bias, hence the loose default tolerance.
OuterReport outer_test(const CircleFunction& f, double tol = 1e-2, std::size_t grid = 0);

namespace detail {
// In-place radix-2 transform, a[j] <- sum_k a[k] exp(±2 pi i j k / n).
// Used for grid sampling; n must be a power of two.
void fft(std::vector<cdouble>& a, bool inverse);
} // namespace detail

} // namespace jscat
