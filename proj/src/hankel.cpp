#include "jscat/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jscat/error.hpp"
#include "jscat/kernels.hpp"

namespace jscat {

HankelOperator::HankelOperator(const CircleFunction& symbol, int shift, std::size_t N)
    : shift_(shift), N_(N) {
    if (N == 0) throw Error("HankelOperator: empty section");
    if (N > std::size_t(kMaxWindow)) throw Error("HankelOperator: section size exceeds the cap");
    h_.resize(2 * N - 1);
    for (std::size_t m = 0; m < h_.size(); ++m) h_[m] = symbol.coeff(-int(m) - 1 - shift);
}

Eigen::MatrixXd HankelOperator::dense_plus_identity() const {
    Eigen::MatrixXd M(N_, N_);
    for (std::size_t j = 0; j < N_; ++j)
        for (std::size_t k = 0; k < N_; ++k) M(j, k) = (j == k ? 1.0 : 0.0) + h_[j + k];
    return M;
}

double weighted_inner_product(const CircleFunction& f, const CircleFunction& g,
                              const CircleFunction& sigma) {
    if (f.is_zero() || g.is_zero()) return 0.0;

    // Plain l2 part over the index overlap.
    double base = 0.0;
    {
        const int lo = std::max(f.min_index(), g.min_index());
        const int hi = std::min(f.max_index(), g.max_index());
        if (lo <= hi) {
            const double* fa = f.raw().data() + (lo - f.min_index());
            const double* ga = g.raw().data() + (lo - g.min_index());
            base = kernels::dot(fa, ga, std::size_t(hi - lo + 1));
        }
    }
    if (sigma.is_zero()) return base;

    // Hankel part: sum over the stored support of g of (sigma f)^(-m-1) g^(m).
    // Only the convolution coefficients with indices -g_max-1 .. -g_min-1 are
    // needed; conv_range computes exactly that strip.
    const int g_lo = g.min_index(), g_hi = g.max_index();
    const long conv_base = long(sigma.min_index()) + long(f.min_index());
    const long conv_len = long(sigma.raw().size()) + long(f.raw().size()) - 1;
    const long u_lo = std::max(0L, -long(g_hi) - 1 - conv_base);
    const long u_hi = std::min(conv_len - 1, -long(g_lo) - 1 - conv_base);
    if (u_lo > u_hi) return base;

    std::vector<double> c(std::size_t(u_hi - u_lo + 1), 0.0);
    kernels::conv_range(sigma.raw().data(), sigma.raw().size(), f.raw().data(), f.raw().size(),
                        c.data(), std::size_t(u_lo), std::size_t(u_hi));
    double tail = 0.0;
    for (long u = u_lo; u <= u_hi; ++u) {
        const long kappa = conv_base + u;           // coefficient index of sigma*f
        tail += c[std::size_t(u - u_lo)] * g.coeff(int(-kappa - 1));
    }
    return base + tail;
}

std::vector<double> default_epsilon_schedule() {
    std::vector<double> s;
    for (int e = 2; e <= 10; ++e) s.push_back(std::pow(10.0, -e));
    return s;
}

namespace {

KernelResult finish(Eigen::VectorXd x, double k0) {
    KernelResult out;
    std::vector<double> coeffs(x.data(), x.data() + x.size());
    // Entries beyond the finite Hankel block are exact zeros of the infinite
    // problem; drop factorization dust so downstream windows stay tight.
    out.k = CircleFunction::from_span(0, std::move(coeffs)).cleaned(1e-14);
    out.k0 = k0;
    out.K = out.k.scaled(1.0 / std::sqrt(k0));
    return out;
}

} // namespace

KernelResult reproducing_kernel(const HankelOperator& H, const KernelOptions& opts) {
    const auto N = H.size();
    const Eigen::MatrixXd M = H.dense_plus_identity();
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(long(N));
    e0[0] = 1.0;

    if (!opts.force_schedule) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
        if (ldlt.info() == Eigen::Success) {
            // Inverse iteration for the smallest eigenvalue; the start vector
            // is deterministic and unstructured enough to overlap the ground
            // space.
            Eigen::VectorXd v = Eigen::VectorXd::Zero(long(N));
            for (std::size_t j = 0; j < N; ++j)
                v[long(j)] = 0.5 + std::fmod(0.6180339887498949 * double(j + 1), 1.0);
            v.normalize();
            double lambda = std::numeric_limits<double>::quiet_NaN();
            bool usable = true;
            for (int it = 0; it < 40 && usable; ++it) {
                v = ldlt.solve(v);
                const double n2 = v.norm();
                if (!std::isfinite(n2) || n2 == 0.0) {
                    usable = false;
                    break;
                }
                v /= n2;
                const double rq = v.dot(M * v);
                if (it >= 4 && std::abs(rq - lambda) <= 1e-9 * std::max(1.0, std::abs(rq))) {
                    lambda = rq;
                    break;
                }
                lambda = rq;
            }
            if (usable) {
                if (std::isfinite(lambda) && lambda > opts.lambda_direct) {
                    Eigen::VectorXd x = ldlt.solve(e0);
                    x += ldlt.solve(e0 - M * x); // one step of iterative refinement
                    const double k0 = x[0];
                    if (std::isfinite(k0) && k0 > 0.0) {
                        KernelResult out = finish(std::move(x), k0);
                        out.converged = true;
                        out.direct = true;
                        out.lambda_min = lambda;
                        out.epsilon_trace = {{0.0, k0}};
                        return out;
                    }
                }
            }
        }
    }

    // Regularized path for (near-)singular metrics.
    if (opts.epsilon_schedule.empty())
        throw Error("reproducing_kernel: empty epsilon schedule");
    for (std::size_t i = 0; i < opts.epsilon_schedule.size(); ++i)
        if (!(opts.epsilon_schedule[i] > 0.0) ||
            (i > 0 && !(opts.epsilon_schedule[i] < opts.epsilon_schedule[i - 1])))
            throw Error("reproducing_kernel: epsilon schedule must be positive and decreasing");

    Eigen::VectorXd x;
    std::vector<std::pair<double, double>> trace;
    for (double eps : opts.epsilon_schedule) {
        Eigen::MatrixXd Me = M;
        Me.diagonal().array() += eps;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Me);
        if (ldlt.info() != Eigen::Success)
            throw Error("reproducing_kernel: factorization failed at eps = " +
                        std::to_string(eps) + "; metric is indefinite");
        x = ldlt.solve(e0);
        x += ldlt.solve(e0 - Me * x);
        trace.emplace_back(eps, x[0]);
    }
    const double k0 = trace.back().second;
    if (!std::isfinite(k0) || k0 <= 0.0)
        throw Error("reproducing_kernel: k0 is not positive along the schedule; the section "
                    "metric is not positive semidefinite");
    KernelResult out = finish(std::move(x), k0);
    out.converged = trace.size() >= 2 &&
                    std::abs(k0 - trace[trace.size() - 2].second) <=
                        opts.tol_kernel * std::max(1.0, std::abs(k0));
    out.direct = false;
    out.epsilon_trace = std::move(trace);
    return out;
}

} // namespace jscat
