#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "jscat/circle_fn.hpp"

namespace jscat {

// N x N section of the Hankel-type operator attached to the symbol
// sigma * t^shift:
//   H[j][k] = sigma_hat(-(j+k+1) - shift),   0 <= j, k < N.
// Only the generator column h[m] = sigma_hat(-(m+1) - shift), m = 0..2N-2,
// is stored, so the Hankel structure is exact by construction. Since only
// indices of sigma_hat at or below -1-shift enter, the operator has an
// exactly finite nonzero block whenever the symbol has a lowest index:
// H[j][k] = 0 for j + k > -1 - shift - min_index(sigma). Sections larger
// than that block are exact, not approximations.
class HankelOperator {
public:
    HankelOperator(const CircleFunction& symbol, int shift, std::size_t N);

    std::size_t size() const { return N_; }
    int shift() const { return shift_; }
    double entry(std::size_t j, std::size_t k) const { return h_[j + k]; }
    const std::vector<double>& generator() const { return h_; }
    Eigen::MatrixXd dense_plus_identity() const; // I + H as a dense matrix

private:
    int shift_ = 0;
    std::size_t N_ = 0;
    std::vector<double> h_;
};

// The weighted pairing <f, g> = sum_m f^(m) g^(m) + sum_m (sigma f)^(-m-1) g^(m)
// over all stored indices of f and g (Laurent polynomials allowed). For
// analytic f, g of degree < N this is exactly f^T (I + H) g for the section
// with symbol sigma and shift 0; shifted symbols implement the pairing on
// t^n-translated subspaces.
double weighted_inner_product(const CircleFunction& f, const CircleFunction& g,
                              const CircleFunction& sigma);

// Geometric schedule 1e-2, 1e-3, ..., 1e-10 for the regularized solves.
std::vector<double> default_epsilon_schedule();

struct KernelOptions {
    std::vector<double> epsilon_schedule = default_epsilon_schedule();
    double lambda_direct = 1e-8; // smallest-eigenvalue estimate above which
                                 // the unregularized solve is trusted
    double tol_kernel = 1e-8;    // convergence = the k0 step between the two
                                 // smallest epsilons, relative to max(1, k0);
                                 // the step scales with eps * |x|^2, so this
                                 // matches a schedule ending at 1e-10
    bool force_schedule = false; // diagnostic: always walk the schedule
};

// Reproducing kernel of the section metric: x solves (eps + I + H) x = e_0,
// k(t) = sum x_j t^j, k0 = x_0 = k(0), K = k / sqrt(k0) (so K(0) = sqrt(k0)).
// When the metric is safely positive the solve is direct (eps = 0);
// otherwise the epsilon schedule is walked and each (eps, k0(eps)) recorded.
// k0(eps) is nondecreasing as eps decreases.
struct KernelResult {
    CircleFunction k;
    double k0 = 0.0;
    CircleFunction K;
    bool converged = false;
    bool direct = false;
    double lambda_min = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, double>> epsilon_trace; // (eps, k0(eps))
};

KernelResult reproducing_kernel(const HankelOperator& H, const KernelOptions& opts = {});

} // namespace jscat
