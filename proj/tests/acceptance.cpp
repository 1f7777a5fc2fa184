// Acceptance suite for the scattering <-> Jacobi pipeline.
//
// Nine end-to-end checks, each printing a single [PASS]/[FAIL] line with the
// measured quantities.  The binary exits 0 only when every check passes.
// Checks that carry a runtime budget time themselves and fail when they
// exceed it.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <chrono>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jscat/circle_fn.hpp"
#include "jscat/direct_scattering.hpp"
#include "jscat/hankel.hpp"
#include "jscat/inverse_scattering.hpp"
#include "jscat/jacobi.hpp"
#include "jscat/smatrix.hpp"
#include "jscat/uniqueness.hpp"

using namespace jscat;

namespace {

int g_failures = 0;

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

void report(bool ok, const char* name, const std::string& detail) {
    std::printf("[%s] %-36s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct Example {
    const char* name;
    ScatteringMatrix S;
};

// The five examples every whole-corpus check runs over: the free data, two
// three-coefficient perturbations, and the two analytic-reflection twists.
std::vector<Example> shipped_examples() {
    std::vector<Example> out;
    out.push_back({"free", ScatteringMatrix{CircleFunction::constant(1.0),
                                            CircleFunction{}, CircleFunction{}}});
    out.push_back({"three-coeff(0.9,0.3,-0.2)", rank3_smatrix(0.9, 0.3, -0.2)});
    out.push_back({"three-coeff(0.5,-0.4,0.1)", rank3_smatrix(0.5, -0.4, 0.1)});
    out.push_back({"analytic t^2", analytic_smatrix(CircleFunction::monomial(2))});
    out.push_back({"analytic t^4", analytic_smatrix(CircleFunction::monomial(4))});
    return out;
}

BasisOptions accept_basis() {
    BasisOptions b;
    b.N = 256;
    b.M = 24;
    return b;
}

// 1. The free matrix must survive the full chain exactly: extraction gives
//    (1, 0, 0), the kernel criterion gives (1, 1), and both reconstructions
//    return the free matrix, all defects below 1e-12, within one second.
void check_free_case() {
    Timer timer;
    JacobiMatrix J0;
    auto ext = extract_smatrix(J0);
    double dev = (ext.S.s - CircleFunction::constant(1.0)).max_abs_coeff();
    dev = std::max(dev, ext.S.s_minus.max_abs_coeff());
    dev = std::max(dev, ext.S.s_plus.max_abs_coeff());
    dev = std::max(dev, ext.direction_defect);
    auto val = validate(ext.S);
    dev = std::max(dev, val.unitarity_defect);
    auto crit = kernel_product_criterion(ext.S);
    dev = std::max({dev, std::fabs(crit.v_plus - 1.0), std::fabs(crit.v_minus - 1.0)});
    auto opts = accept_basis();
    auto plus = reconstruct_jacobi(ext.S.s_plus, opts);
    auto minus = reconstruct_dual(ext.S.s_minus, opts);
    dev = std::max({dev, distance(plus.J, J0, -24, 24), distance(minus.J, J0, -24, 24),
                    plus.gram_defect, plus.band_defect, minus.gram_defect,
                    minus.band_defect});
    double el = timer.elapsed();
    bool ok = val.passes && crit.all_converged && plus.ok && minus.ok &&
              dev < 1e-12 && el < 1.0;
    report(ok, "free data round trip",
           fmt("max defect %.2e (tol 1e-12), %.2f s (limit 1 s)", dev, el));
}

// 2. Three-coefficient perturbation (p0, q0, q_{-1}) = (0.9, 0.3, -0.2):
//    extraction is unitary to 1e-12, both reconstructions return the input
//    on [-24, 24] to 1e-6, and the kernel criterion sits at 1 within 1e-4.
void check_three_coeff_roundtrip() {
    Timer timer;
    JacobiMatrix J_in;
    J_in.set(0, 0.9, 0.3);
    J_in.set(-1, 1.0, -0.2);
    auto S = rank3_smatrix(0.9, 0.3, -0.2);
    auto val = validate(S);
    auto opts = accept_basis();
    auto plus = reconstruct_jacobi(S.s_plus, opts);
    auto minus = reconstruct_dual(S.s_minus, opts);
    double d_plus = distance(plus.J, J_in, -24, 24);
    double d_minus = distance(minus.J, J_in, -24, 24);
    auto crit = kernel_product_criterion(S);
    double vdev = std::max(std::fabs(crit.v_plus - 1.0), std::fabs(crit.v_minus - 1.0));
    double el = timer.elapsed();
    bool ok = val.passes && val.unitarity_defect < 1e-12 && plus.ok && minus.ok &&
              d_plus < 1e-6 && d_minus < 1e-6 && crit.all_converged && vdev < 1e-4 &&
              el < 30.0;
    report(ok, "three-coefficient round trip",
           fmt("unitarity %.2e, recon gap %.2e/%.2e (tol 1e-6), |v-1| %.2e, "
               "%.2f s (limit 30 s)",
               val.unitarity_defect, d_plus, d_minus, vdev, el));
}

// 3. For an analytic reflection s_-(z) = a z + ... the kernel at the origin
//    is exactly 1, and shifting the symbol by t^-2 moves it to
//    1/sqrt(1 + a); checked at a in {0, 0.5, -0.3}.
void check_closed_form_kernels() {
    struct Case {
        double a;
        CircleFunction sm;
    };
    std::vector<Case> cases;
    cases.push_back({0.0, CircleFunction::monomial(3, 0.2)});
    cases.push_back({0.5, CircleFunction::monomial(1, 0.5) +
                              CircleFunction::monomial(2, 0.1)});
    cases.push_back({-0.3, CircleFunction::monomial(1, -0.3) +
                               CircleFunction::monomial(4, 0.25)});
    double worst_base = 0.0;
    double worst_shift = 0.0;
    bool converged = true;
    for (const auto& c : cases) {
        auto base = reproducing_kernel(HankelOperator(c.sm, 0, 256));
        auto shifted = reproducing_kernel(HankelOperator(c.sm, -2, 256));
        converged = converged && base.converged && shifted.converged;
        worst_base = std::max(worst_base, std::fabs(std::sqrt(base.k0) - 1.0));
        worst_shift = std::max(
            worst_shift,
            std::fabs(std::sqrt(shifted.k0) - 1.0 / std::sqrt(1.0 + c.a)));
    }
    bool ok = converged && worst_base == 0.0 && worst_shift < 1e-10;
    report(ok, "closed-form kernel values",
           fmt("K(0) defect %.1e (exact zero required), shifted defect %.2e "
               "(tol 1e-10)",
               worst_base, worst_shift));
}

// 4. Analytic symbols have no negative Fourier modes at or below -1, so
//    their Hankel sections are the zero matrix exactly; 20 random analytic
//    polynomials, fixed seed.
void check_hankel_nullity() {
    std::mt19937 rng(20260815u);
    std::uniform_int_distribution<int> deg(0, 12);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, double> c;
        int d = deg(rng);
        for (int m = 0; m <= d; ++m) c[m] = coeff(rng);
        CircleFunction f = CircleFunction::from_coeffs(c);
        HankelOperator H(f, 0, 64);
        for (std::size_t j = 0; j < H.size(); ++j)
            for (std::size_t k = 0; k < H.size(); ++k)
                worst = std::max(worst, std::fabs(H.entry(j, k)));
    }
    bool ok = (worst == 0.0);
    report(ok, "analytic symbols: zero Hankel block",
           fmt("max |entry| %.1e over 20 random analytic polynomials "
               "(exact zero required)",
               worst));
}

// The analytic-reflection examples must reproduce the free matrix on the
// half-axes their reflections govern: the plus-side reconstruction on
// n >= 1 (couplings from n >= 2), the minus-side one on n <= -2.
double half_axis_defect(const JacobiMatrix& Jp, const JacobiMatrix& Jm) {
    double dev = 0.0;
    for (int n = 1; n <= 24; ++n) dev = std::max(dev, std::fabs(Jp.q(n)));
    for (int n = 2; n <= 24; ++n) dev = std::max(dev, std::fabs(Jp.p(n) - 1.0));
    for (int n = -24; n <= -2; ++n) {
        dev = std::max(dev, std::fabs(Jm.q(n)));
        dev = std::max(dev, std::fabs(Jm.p(n) - 1.0));
    }
    return dev;
}

// 5. The analytic twist Delta = t^2 splits: the criterion value drops to
//    1/sqrt(3), the two reconstructions disagree by at least 0.01, and each
//    is free on its half-axis; Delta = t^4 is assessed non-unique.
void check_nonuniqueness_demo() {
    Timer timer;
    auto S2 = analytic_smatrix(CircleFunction::monomial(2));
    auto crit = kernel_product_criterion(S2);
    double vdev = std::fabs(crit.v_plus - 1.0 / std::sqrt(3.0));
    auto opts = accept_basis();
    auto plus = reconstruct_jacobi(S2.s_plus, opts);
    auto minus = reconstruct_dual(S2.s_minus, opts);
    double dist2 = distance(plus.J, minus.J, -24, 24);
    double axis2 = half_axis_defect(plus.J, minus.J);

    auto S4 = analytic_smatrix(CircleFunction::monomial(4));
    UniquenessOptions uopts;
    uopts.basis = opts;
    uopts.with_diagnostics = false;
    auto rep4 = assess_uniqueness(S4, uopts);
    double axis4 = half_axis_defect(rep4.plus.J, rep4.minus.J);

    double el = timer.elapsed();
    bool ok = crit.all_converged && vdev < 1e-6 && plus.ok && minus.ok &&
              dist2 >= 0.01 && axis2 < 1e-6 &&
              rep4.verdict == Verdict::non_unique && axis4 < 1e-6 && el < 60.0;
    report(ok, "analytic-reflection splitting",
           fmt("|v+ - 1/sqrt(3)| %.2e, side gap %.3f (floor 0.01), half-axis "
               "defects %.1e/%.1e, t^4 verdict %s, %.2f s (limit 60 s)",
               vdev, dist2, axis2, axis4, to_string(rep4.verdict), el));
}

// 6. Every shipped example produces an orthonormal basis with tridiagonal
//    multiplication: Gram and off-band defects below 1e-8 on [-24, 24],
//    both sides.
void check_basis_quality() {
    auto opts = accept_basis();
    double worst = 0.0;
    bool all_ok = true;
    for (const auto& ex : shipped_examples()) {
        auto plus = reconstruct_jacobi(ex.S.s_plus, opts);
        auto minus = reconstruct_dual(ex.S.s_minus, opts);
        all_ok = all_ok && plus.ok && minus.ok;
        worst = std::max({worst, plus.gram_defect, plus.band_defect,
                          minus.gram_defect, minus.band_defect});
    }
    bool ok = all_ok && worst < 1e-8;
    report(ok, "orthonormality and band structure",
           fmt("max Gram/off-band defect %.2e (tol 1e-8), 5 examples x 2 sides",
               worst));
}

// +1 = unique-like, -1 = non-unique-like, 0 = indeterminate.  The shipped
// examples separate cleanly: unique-type values sit near machine scale,
// non-unique ones at 0.3 and above.
int vote(double value) {
    if (value < 1e-4) return 1;
    if (value > 1e-3) return -1;
    return 0;
}

// 7. The four independent diagnostics -- kernel-product criterion,
//    approximation-residual limit, density residuals, and the
//    reconstruction gap -- must cast the same vote on every example.
void check_diagnostic_coherence() {
    auto opts = accept_basis();
    bool ok = true;
    std::string detail;
    for (const auto& ex : shipped_examples()) {
        auto crit = kernel_product_criterion(ex.S);
        double d1 = std::max(std::fabs(crit.v_plus - 1.0),
                             std::fabs(crit.v_minus - 1.0));
        auto approx = approximation_residuals(ex.S);
        double d2 = approx.residuals.back().second;
        auto dens = density_diagnostic(ex.S);
        double d3 = 0.0;
        for (double r : dens.residuals) d3 = std::max(d3, r);
        auto plus = reconstruct_jacobi(ex.S.s_plus, opts);
        auto minus = reconstruct_dual(ex.S.s_minus, opts);
        double d4 = distance(plus.J, minus.J, -24, 24);
        int v1 = vote(d1), v2 = vote(d2), v3 = vote(d3), v4 = vote(d4);
        bool agree = v1 != 0 && v1 == v2 && v2 == v3 && v3 == v4;
        ok = ok && agree && crit.all_converged && plus.ok && minus.ok;
        if (!agree)
            detail += fmt("%s: votes %+d/%+d/%+d/%+d (values %.1e %.1e %.1e %.1e); ",
                          ex.name, v1, v2, v3, v4, d1, d2, d3, d4);
    }
    report(ok, "diagnostic coherence",
           ok ? "criterion, approximation limit, density, reconstruction gap "
                "agree on all 5 examples"
              : detail);
}

// 8. Twisting by an inner factor must leave the transmission coefficient
//    coefficient-identical and the reflection modulus grid-identical to
//    1e-12; the candidate scan over {t, t^2, t^3, Blaschke(0.5)} on the
//    Delta = t^2 example completes with a verdict per candidate.  Whether
//    any candidate restores uniqueness is reported as a finding, not
//    asserted.
void check_repair() {
    auto S2 = analytic_smatrix(CircleFunction::monomial(2));
    std::vector<std::pair<std::string, CircleFunction>> candidates;
    candidates.emplace_back("t", CircleFunction::monomial(1));
    candidates.emplace_back("t^2", CircleFunction::monomial(2));
    candidates.emplace_back("t^3", CircleFunction::monomial(3));
    candidates.emplace_back("blaschke(0.5)",
                            inner_symmetric_factory(0, {0.5}, 1e-13));

    bool s_same = true;
    double worst_mod = 0.0;
    auto base = sample(S2.s_minus, 4096);
    for (const auto& [label, phi] : candidates) {
        (void)label;
        auto R = repair(S2, phi);
        s_same = s_same && (R.s == S2.s);
        auto twisted = sample(R.s_minus, 4096);
        for (std::size_t i = 0; i < base.values.size(); ++i)
            worst_mod = std::max(worst_mod, std::fabs(std::abs(twisted.values[i]) -
                                                      std::abs(base.values[i])));
    }

    UniquenessOptions uopts;
    uopts.basis = accept_basis();
    uopts.with_diagnostics = false;
    auto search = repair_search(S2, candidates, uopts);
    bool scan_ok = search.candidates.size() == candidates.size();
    for (const auto& c : search.candidates)
        scan_ok = scan_ok && c.admissible && c.error.empty() &&
                  c.report.verdict != Verdict::inconclusive;

    bool ok = s_same && worst_mod < 1e-12 && scan_ok;
    std::string finding =
        search.found >= 0
            ? fmt("finding: %s restores uniqueness",
                  search.candidates[std::size_t(search.found)].label.c_str())
            : "finding: no candidate restores uniqueness";
    report(ok, "repair preservation and search",
           fmt("s identical: %s, |s_-| drift %.1e (tol 1e-12), %zu/%zu verdicts; %s",
               s_same ? "yes" : "NO", worst_mod, search.candidates.size(),
               candidates.size(), finding.c_str()));
    if (ok)
        for (const auto& c : search.candidates)
            std::printf("       candidate %-14s -> %s\n", c.label.c_str(),
                        to_string(c.report.verdict));
}

// 9. Doubling the section size from 256 to 512 must not move any reported
//    number by more than 1e-6: the Hankel blocks are finite, so sections
//    beyond the block are exact and the difference is in fact zero.
void check_truncation_stability() {
    auto o256 = accept_basis();
    BasisOptions o512 = o256;
    o512.N = 512;
    double worst = 0.0;
    bool all_ok = true;
    for (const auto& ex : shipped_examples()) {
        auto c256 = kernel_product_criterion(ex.S, 256);
        auto c512 = kernel_product_criterion(ex.S, 512);
        all_ok = all_ok && c256.all_converged && c512.all_converged;
        worst = std::max({worst, std::fabs(c256.v_plus - c512.v_plus),
                          std::fabs(c256.v_minus - c512.v_minus)});
        auto p256 = reconstruct_jacobi(ex.S.s_plus, o256);
        auto p512 = reconstruct_jacobi(ex.S.s_plus, o512);
        auto m256 = reconstruct_dual(ex.S.s_minus, o256);
        auto m512 = reconstruct_dual(ex.S.s_minus, o512);
        all_ok = all_ok && p256.ok && p512.ok && m256.ok && m512.ok;
        worst = std::max({worst, distance(p256.J, p512.J, -24, 24),
                          distance(m256.J, m512.J, -24, 24)});
    }
    bool ok = all_ok && worst < 1e-6;
    report(ok, "section-size stability (256 vs 512)",
           fmt("max change %.2e (tol 1e-6) over criteria and coefficients",
               worst));
}

}  // namespace

int main() {
    std::printf("acceptance suite: direct/inverse scattering pipeline\n");
    Timer total;
    check_free_case();
    check_three_coeff_roundtrip();
    check_closed_form_kernels();
    check_hankel_nullity();
    check_nonuniqueness_demo();
    check_basis_quality();
    check_diagnostic_coherence();
    check_repair();
    check_truncation_stability();
    std::printf("%d/9 checks passed in %.1f s\n", 9 - g_failures, total.elapsed());
    return g_failures == 0 ? 0 : 1;
}
