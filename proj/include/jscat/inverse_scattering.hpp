#pragma once

#include <cstddef>
#include <vector>

#include "jscat/circle_fn.hpp"
#include "jscat/hankel.hpp"
#include "jscat/jacobi.hpp"

namespace jscat {

struct BasisOptions {
    std::size_t N = 256;   // section size floor; enlarged to cover the block
    int M = 24;            // coefficients are recovered on [-M, M]
    KernelOptions kernel;
    double tol_ortho = 1e-8; // orthonormality defect allowed in the report
    double tol_band = 1e-8;  // off-band leakage of z allowed in the report
};

// Section size that contains the whole nonzero Hankel block for every shift
// 2n, n in [-M-1, M+1]; sections at least this large are exact, so results
// are independent of N beyond it.
std::size_t effective_section(const CircleFunction& sigma, const BasisOptions& opts);

// Orthonormal family phi_n = t^n K_n, where K_n is the normalized
// reproducing kernel of I + H(sigma * t^{2n}). phi_n spans V_n minus V_{n+1}
// for the flag V_n = closure of span{t^j : j >= n} in the sigma-weighted
// metric, i.e. it is the Gram-Schmidt column the Jacobi coefficients are
// read from.
struct Basis {
    int n_lo = 0;
    std::vector<KernelResult> kernels; // kernels[i] belongs to n = n_lo + i
    std::vector<CircleFunction> phi;
    CircleFunction sigma;
    std::size_t n_eff = 0;
    bool all_converged = true;

    int n_hi() const { return n_lo + int(phi.size()) - 1; }
    const CircleFunction& phi_at(int n) const;
    const KernelResult& kernel_at(int n) const;
};

Basis build_basis(const CircleFunction& sigma, const BasisOptions& opts = {});

struct ReconstructionReport {
    JacobiMatrix J;          // trusted range [-M, M]
    double gram_defect = 0.0; // max |<phi_n, phi_m> - delta| over the basis
    double band_defect = 0.0; // max |<z phi_n, phi_m>|, |n - m| >= 2
    double min_p = 0.0;
    bool converged_all = false;
    bool ok = false;
    std::size_t n_eff = 0;
};

// Jacobi coefficients from the reflection symbol governing the right
// half-axis: q_n = <z phi_n, phi_n>, p_n = <z phi_{n-1}, phi_n>.
ReconstructionReport reconstruct_jacobi(const CircleFunction& s_plus,
                                        const BasisOptions& opts = {});

// The same pipeline on the other reflection symbol; the result is mapped
// back through spatial reflection, so it is directly comparable with
// reconstruct_jacobi output. Agreement of the two is exactly the uniqueness
// question for the scattering data.
ReconstructionReport reconstruct_dual(const CircleFunction& s_minus,
                                      const BasisOptions& opts = {});

} // namespace jscat
