#include "jscat/smatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jscat/direct_scattering.hpp"
#include "jscat/jacobi.hpp"

namespace jscat {

ValidationReport validate(const ScatteringMatrix& S, double tol_unitary, double tol_outer,
                          std::size_t grid) {
    ValidationReport rep;
    const int w = std::max({S.s.window(), S.s_minus.window(), S.s_plus.window()});
    rep.grid = grid_for(w, grid == 0 ? 4096 : grid);

    const auto vs = sample(S.s, rep.grid).values;
    const auto vm = sample(S.s_minus, rep.grid).values;
    const auto vp = sample(S.s_plus, rep.grid).values;

    for (std::size_t j = 0; j < rep.grid; ++j) {
        const double s2 = std::norm(vs[j]);
        rep.defect_minus = std::max(rep.defect_minus, std::abs(s2 + std::norm(vm[j]) - 1.0));
        rep.defect_plus = std::max(rep.defect_plus, std::abs(s2 + std::norm(vp[j]) - 1.0));
        rep.defect_cross = std::max(
            rep.defect_cross, std::abs(vm[j] * std::conj(vs[j]) + vs[j] * std::conj(vp[j])));
    }
    rep.unitarity_defect = std::max({rep.defect_minus, rep.defect_plus, rep.defect_cross});
    // The reality symmetry S(conj(t)) = conj(S(t)) is exact for real
    // coefficient storage; recorded as zero rather than re-measured.
    rep.symmetry_defect = 0.0;
    rep.outer = outer_test(S.s, tol_outer, rep.grid);
    rep.passes = rep.unitarity_defect <= tol_unitary && rep.outer.conclusive && rep.outer.is_outer;
    return rep;
}

namespace {

void require_inner(const CircleFunction& f, double tol_inner, const char* what) {
    if (f.is_zero()) throw Error(std::string(what) + ": the zero function is not inner");
    const auto g = sample(f, grid_for(f.window()));
    double defect = 0.0;
    for (const auto& v : g.values) defect = std::max(defect, std::abs(std::abs(v) - 1.0));
    if (defect > tol_inner)
        throw Error(std::string(what) + ": modulus deviates from 1 on the circle by " +
                    std::to_string(defect) + " (tolerance " + std::to_string(tol_inner) + ")");
}

} // namespace

ScatteringMatrix analytic_smatrix(const CircleFunction& delta, double tol_inner,
                                  double tol_unitary) {
    require_inner(delta, tol_inner, "analytic_smatrix");
    if (delta.min_index() < 0)
        throw Error("analytic_smatrix: the inner factor must be analytic (no negative indices)");
    ScatteringMatrix S;
    S.s = CircleFunction::constant(0.5) - delta.scaled(0.5);
    S.s_minus = CircleFunction::constant(0.5) + delta.scaled(0.5);
    S.s_plus = S.s_minus;
    const ValidationReport rep = validate(S, tol_unitary);
    if (!rep.passes) {
        if (!rep.outer.conclusive)
            throw Error("analytic_smatrix: degenerate input, s = (1 - Delta)/2 vanishes at 0 "
                        "(Delta(0) = 1) and the outer test is inconclusive");
        throw Error("analytic_smatrix: validation failed (unitarity defect " +
                    std::to_string(rep.unitarity_defect) + ", outer defect " +
                    std::to_string(rep.outer.defect) + ")");
    }
    return S;
}

ScatteringMatrix rank3_smatrix(double p0, double q0, double qm1) {
    if (!std::isfinite(p0) || !std::isfinite(q0) || !std::isfinite(qm1))
        throw Error("rank3_smatrix: non-finite parameter");
    if (p0 <= 0.0) throw Error("rank3_smatrix: p0 must be positive");
    // Bound states of this family are governed by the 2x2 coefficient block
    // [[qm1, p0], [p0, q0]]: operator norm above 1 pushes an eigenvalue of
    // the matrix out of the essential spectrum [-2, 2].
    const double tr = q0 + qm1;
    const double gap = std::sqrt((q0 - qm1) * (q0 - qm1) + 4.0 * p0 * p0);
    const double norm = std::max(std::abs(tr + gap), std::abs(tr - gap)) / 2.0;
    if (norm > 1.0 + 1e-12)
        throw Error("rank3_smatrix: coefficient block norm " + std::to_string(norm) +
                    " exceeds 1; the matrix has a bound state");
    JacobiMatrix J;
    J.set(-1, 1.0, qm1);
    J.set(0, p0, q0);
    return extract_smatrix(J).S;
}

ScatteringMatrix repair(const ScatteringMatrix& S, const CircleFunction& phi, double tol_inner,
                        double tol_unitary) {
    require_inner(phi, tol_inner, "repair");
    ScatteringMatrix out;
    out.s = S.s;
    out.s_minus = S.s_minus * phi;
    out.s_plus = S.s_plus * phi.involute();
    const ValidationReport rep = validate(out, tol_unitary);
    if (!rep.passes)
        throw Error("repair: twisted data failed validation (unitarity defect " +
                    std::to_string(rep.unitarity_defect) + ")");
    return out;
}

} // namespace jscat
