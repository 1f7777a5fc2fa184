#include "jscat/inverse_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jscat/error.hpp"

namespace jscat {

const CircleFunction& Basis::phi_at(int n) const {
    if (n < n_lo || n > n_hi())
        throw Error("Basis::phi_at: index " + std::to_string(n) + " outside [" +
                    std::to_string(n_lo) + ", " + std::to_string(n_hi()) + "]");
    return phi[std::size_t(n - n_lo)];
}

const KernelResult& Basis::kernel_at(int n) const {
    if (n < n_lo || n > n_hi())
        throw Error("Basis::kernel_at: index " + std::to_string(n) + " outside [" +
                    std::to_string(n_lo) + ", " + std::to_string(n_hi()) + "]");
    return kernels[std::size_t(n - n_lo)];
}

std::size_t effective_section(const CircleFunction& sigma, const BasisOptions& opts) {
    if (opts.M < 1) throw Error("effective_section: M must be at least 1");
    const int depth = std::max(0, -sigma.min_index());
    const std::size_t block = std::size_t(depth) + 2 * std::size_t(opts.M + 1);
    return std::max(opts.N, block + 16);
}

Basis build_basis(const CircleFunction& sigma, const BasisOptions& opts) {
    Basis b;
    b.sigma = sigma;
    b.n_lo = -opts.M - 1;
    b.n_eff = effective_section(sigma, opts);
    b.phi.reserve(std::size_t(2 * opts.M + 3));
    b.kernels.reserve(std::size_t(2 * opts.M + 3));
    for (int n = b.n_lo; n <= opts.M + 1; ++n) {
        HankelOperator H(sigma, 2 * n, b.n_eff);
        KernelResult kr = reproducing_kernel(H, opts.kernel);
        b.all_converged = b.all_converged && kr.converged;
        b.phi.push_back(kr.K.shifted(n));
        b.kernels.push_back(std::move(kr));
    }
    return b;
}

namespace {

ReconstructionReport reconstruct_from_basis(const Basis& b, const BasisOptions& opts) {
    ReconstructionReport rep;
    rep.n_eff = b.n_eff;
    rep.converged_all = b.all_converged;
    const int M = opts.M;

    std::vector<CircleFunction> zphi;
    zphi.reserve(b.phi.size());
    for (const auto& f : b.phi) zphi.push_back(mul_by_z(f));
    auto zphi_at = [&](int n) -> const CircleFunction& {
        return zphi[std::size_t(n - b.n_lo)];
    };

    rep.min_p = std::numeric_limits<double>::infinity();
    JacobiMatrix J;
    for (int n = -M; n <= M; ++n) {
        const double q = weighted_inner_product(zphi_at(n), b.phi_at(n), b.sigma);
        const double p = weighted_inner_product(zphi_at(n - 1), b.phi_at(n), b.sigma);
        rep.min_p = std::min(rep.min_p, p);
        if (!(p > 0.0))
            throw Error("reconstruct: off-diagonal coefficient " + std::to_string(p) +
                        " at site " + std::to_string(n) +
                        " is not positive; the data is outside the admissible class");
        J.set(n, p, q);
    }
    J.set_range(-M, M);
    rep.J = std::move(J);

    // Quality of the basis: orthonormality and the three-band structure of
    // multiplication by z. Both vanish in exact arithmetic.
    for (int n = b.n_lo; n <= b.n_hi(); ++n) {
        for (int m = n; m <= b.n_hi(); ++m) {
            const double g = weighted_inner_product(b.phi_at(n), b.phi_at(m), b.sigma);
            rep.gram_defect = std::max(rep.gram_defect, std::abs(g - (n == m ? 1.0 : 0.0)));
            if (m - n >= 2) {
                const double z = weighted_inner_product(zphi_at(n), b.phi_at(m), b.sigma);
                rep.band_defect = std::max(rep.band_defect, std::abs(z));
            }
        }
    }

    rep.ok = rep.converged_all && rep.min_p > 0.0 && rep.gram_defect <= opts.tol_ortho &&
             rep.band_defect <= opts.tol_band;
    return rep;
}

} // namespace

ReconstructionReport reconstruct_jacobi(const CircleFunction& s_plus, const BasisOptions& opts) {
    return reconstruct_from_basis(build_basis(s_plus, opts), opts);
}

ReconstructionReport reconstruct_dual(const CircleFunction& s_minus, const BasisOptions& opts) {
    ReconstructionReport rep = reconstruct_from_basis(build_basis(s_minus, opts), opts);
    rep.J = rep.J.reflected();
    return rep;
}

} // namespace jscat
