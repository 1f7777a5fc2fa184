#pragma once
// Uniqueness analysis for scattering data.
//
// A scattering matrix that passes validation always admits at least one
// Jacobi-matrix preimage (the inverse pipeline produces one).  Whether that
// preimage is the *only* one is decided by the criteria implemented here:
//
//  * kernel_product_criterion -- the product of the scattering coefficient at
//    the origin with two reproducing-kernel values.  Data with a unique
//    preimage yields exactly (1, 1); a deficit below 1 measures the failure
//    of the analytic-projection ranges to be dense.
//  * compare_reconstructions -- reconstruct one Jacobi matrix from s_plus and
//    an independent one from s_minus (dual side) and measure their distance.
//    Unique data makes the two sides agree.
//  * closed_form_kernel_check -- for data whose minus reflection is analytic
//    and vanishes at the origin, the plus-side reproducing kernel has a
//    closed rational form; the sampled defect against that form is another
//    uniqueness witness (small iff the data behaves like a unique preimage).
//  * approximation_residuals / density_diagnostic -- the approximation form
//    of the criterion.  Both sides embed isometrically into a common pair of
//    L^2 spaces:  h |-> (s h, s_plus h + t^{-1} invol(h))  for the plus-side
//    weighted space and  h |-> (t^{-1} invol(h) + s_minus h, s h)  for the
//    minus side.  Uniqueness is equivalent to the first two dual basis
//    vectors (the minus-side images at sites -1 and -2) being approximable
//    by plus-side polynomials t^j in that norm.  approximation_residuals
//    sweeps the polynomial degree; density_diagnostic reports the endpoint
//    together with representation cross-checks.  For unique data with
//    analytic s_plus the targets are exactly representable, so residuals sit
//    at machine scale; non-unique data plateaus at a positive floor.
//
// assess_uniqueness combines the criterion and the reconstruction comparison
// into a conservative verdict; the remaining diagnostics are reported as
// evidence but do not overrule the verdict.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jscat/hankel.hpp"
#include "jscat/inverse_scattering.hpp"
#include "jscat/smatrix.hpp"

namespace jscat {

// ---------------------------------------------------------------------------
// Kernel-product criterion.

struct CriterionResult {
    double s0 = 0.0;       // scattering coefficient at the origin
    double v_plus = 0.0;   // s0 * K_{s_plus}(0) * K_{s_minus t^-2}(0)
    double v_minus = 0.0;  // s0 * K_{s_minus}(0) * K_{s_plus t^-2}(0)
    KernelResult k_plus;         // kernel for symbol s_plus, shift 0
    KernelResult k_minus_shift;  // kernel for symbol s_minus, shift -2
    KernelResult k_minus;        // kernel for symbol s_minus, shift 0
    KernelResult k_plus_shift;   // kernel for symbol s_plus, shift -2
    bool all_converged = false;
};

// Throws jscat::Error when |s(0)| < 1e-12 (the criterion is undefined) or
// when a kernel solve fails.  N is the minimum section size; it is enlarged
// automatically so that every finite Hankel block is covered exactly.
CriterionResult kernel_product_criterion(const ScatteringMatrix& S,
                                         std::size_t N = 256,
                                         const KernelOptions& kopts = {});

// ---------------------------------------------------------------------------
// Closed-form kernel identity.

struct ClosedFormCheck {
    bool applicable = false;  // needs s_minus analytic with s_minus(0) = 0
    std::string reason;       // set when not applicable
    double a = 0.0;           // first Taylor coefficient of s_minus
    // Exact consequences of the assumptions, asserted small:
    //   K_{s_minus} == 1   and   k0(s_minus t^-2) == 1/(1+a).
    double base_defect = 0.0;
    // max_z | K_{s_plus}(z) - (1 + s_minus(z)/z) / (s(z) sqrt(1+a)) | over
    // disk samples; small iff the data behaves like a unique preimage.
    double identity_defect = 0.0;
    std::size_t samples = 0;  // points evaluated
    std::size_t skipped = 0;  // points skipped because |s(z)| ~ 0
};

ClosedFormCheck closed_form_kernel_check(const ScatteringMatrix& S,
                                         std::size_t N = 256);

// ---------------------------------------------------------------------------
// Polynomial approximation residuals.

struct ApproximationResiduals {
    // (degree, residual): the worse of the two target distances from
    // span{t^j : j <= degree} in the weighted norm, nonincreasing in the
    // degree.  Targets are unit vectors, so values live in [0, 1].
    std::vector<std::pair<int, double>> residuals;
};

ApproximationResiduals approximation_residuals(
    const ScatteringMatrix& S,
    const std::vector<int>& degrees = {0, 1, 2, 4, 8, 16, 24, 32},
    std::size_t N = 256);

// ---------------------------------------------------------------------------
// Density diagnostic in the pair representation.

struct DensityReport {
    int d_max = 32;
    // residuals[i] is the pair-space distance of the dual target at site i
    // (the image of the minus-side basis vector at site -i-1) from
    // span{t^j : 0 <= j <= d_max}.  Targets are unit vectors, so values
    // live in [0, 1].
    std::vector<double> residuals;
    // Cross-check of the representation: the pair inner product of candidate
    // pairs must reproduce the weighted inner product <t^j, t^k>_{s_plus}.
    double consistency_defect = 0.0;
    // | ||target||^2 - 1 |, nonzero only through unitarity defects.
    double target_norm_defect = 0.0;
};

DensityReport density_diagnostic(const ScatteringMatrix& S, int d_max = 32,
                                 std::size_t N = 256);

// ---------------------------------------------------------------------------
// Combined assessment.

enum class Verdict { unique, non_unique, inconclusive };
const char* to_string(Verdict v);

struct UniquenessOptions {
    BasisOptions basis;        // drives both reconstructions and the kernels
    double tol_crit = 1e-4;    // |v - 1| below this counts as "criterion holds"
    double tol_match = 1e-4;   // reconstruction distance below this matches
    bool with_diagnostics = true;  // run the three auxiliary diagnostics
    std::vector<int> degrees = {0, 1, 2, 4, 8, 16, 24, 32};
    int density_d_max = 32;
};

struct UniquenessReport {
    CriterionResult criterion;
    ReconstructionReport plus;   // from s_plus
    ReconstructionReport minus;  // from s_minus, reflected back
    double reconstruction_distance = 0.0;
    ClosedFormCheck closed_form;
    ApproximationResiduals approximation;
    DensityReport density;
    Verdict verdict = Verdict::inconclusive;
    std::string rationale;
    std::vector<std::string> flags;  // anomalies and skipped diagnostics
    double tol_crit = 0.0;
    double tol_match = 0.0;
};

// Verdict rule:
//   unique       iff max(|v_plus - 1|, |v_minus - 1|) <  tol_crit
//                     and reconstruction_distance      <  tol_match,
//   non_unique   iff max(|v_plus - 1|, |v_minus - 1|) >= 10 * tol_crit
//                     and reconstruction_distance      >= 10 * tol_match,
//   inconclusive otherwise, and always when any solver reports trouble
//                (unconverged kernels, failed reconstructions).
UniquenessReport assess_uniqueness(const ScatteringMatrix& S,
                                   const UniquenessOptions& opts = {});

// ---------------------------------------------------------------------------
// Repair search.

struct RepairCandidateResult {
    std::string label;            // e.g. "t^2" or "blaschke(0.5)"
    bool admissible = false;      // repaired data passed validation
    std::string error;            // set when repair() threw
    UniquenessReport report;      // only meaningful when admissible
};

struct RepairSearchResult {
    std::vector<RepairCandidateResult> candidates;
    int found = -1;  // index of the first candidate with verdict unique, or -1
};

// Twists S by each inner candidate and assesses the result.  Candidates that
// fail validation are reported with their error instead of aborting the scan.
RepairSearchResult repair_search(
    const ScatteringMatrix& S,
    const std::vector<std::pair<std::string, CircleFunction>>& candidates,
    const UniquenessOptions& opts = {});

// The default candidate list: t, t^2, t^3, the Blaschke factor with zero 0.5,
// and t times that factor.
std::vector<std::pair<std::string, CircleFunction>> default_repair_candidates(
    double tol_inner = 1e-10);

}  // namespace jscat
