#include "jscat/uniqueness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

#include "jscat/error.hpp"

namespace jscat {

namespace {

// Section size whose Hankel block for this symbol/shift is complete; beyond
// it rows and columns are exactly zero, so results do not depend on N.
std::size_t section_covering(const CircleFunction& sigma, int shift, std::size_t N) {
    if (sigma.is_zero()) return std::max<std::size_t>(N, 16);
    long block = -1L - shift - sigma.min_index(); // largest j+k with entries
    long need = std::max(0L, block + 1) + 8;
    return std::max(N, std::size_t(need));
}

KernelResult kernel_for(const CircleFunction& sigma, int shift, std::size_t N,
                        const KernelOptions& kopts) {
    HankelOperator H(sigma, shift, section_covering(sigma, shift, N));
    return reproducing_kernel(H, kopts);
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return std::string(buf);
}

// --- stacked least squares over coefficient ranges -------------------------

// A pair (a, b) of circle functions carrying the norm
// sqrt((|a|^2 + |b|^2) / 2); used by the density diagnostic.
struct FunctionPair {
    CircleFunction a, b;
};

double pair_ip(const FunctionPair& f, const FunctionPair& g) {
    const CircleFunction zero;
    return 0.5 * (weighted_inner_product(f.a, g.a, zero) +
                  weighted_inner_product(f.b, g.b, zero));
}

void fill_column(Eigen::VectorXd& col, long offset, const CircleFunction& f,
                 long lo, double scale) {
    const auto& raw = f.raw();
    long base = f.min_index();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        col[offset + (base + long(i)) - lo] = scale * raw[i];
    }
}

struct StackedLayout {
    long lo1 = 0, hi1 = -1, lo2 = 0, hi2 = -1;

    void include(const CircleFunction& f, const CircleFunction& g) {
        auto widen = [](long& lo, long& hi, const CircleFunction& h) {
            if (h.is_zero()) return;
            if (hi < lo) { lo = h.min_index(); hi = h.max_index(); return; }
            lo = std::min(lo, long(h.min_index()));
            hi = std::max(hi, long(h.max_index()));
        };
        widen(lo1, hi1, f);
        widen(lo2, hi2, g);
    }

    long rows() const { return std::max(0L, hi1 - lo1 + 1) + std::max(0L, hi2 - lo2 + 1); }

    Eigen::VectorXd stack(const CircleFunction& f, const CircleFunction& g,
                          double scale) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(rows());
        if (!f.is_zero()) fill_column(v, 0, f, lo1, scale);
        if (!g.is_zero()) fill_column(v, std::max(0L, hi1 - lo1 + 1), g, lo2, scale);
        return v;
    }
};

} // namespace

// ---------------------------------------------------------------------------

CriterionResult kernel_product_criterion(const ScatteringMatrix& S,
                                         std::size_t N,
                                         const KernelOptions& kopts) {
    CriterionResult r;
    r.s0 = S.s.coeff(0);
    if (std::abs(r.s0) < 1e-12) {
        throw Error("kernel_product_criterion: s(0) vanishes; the product "
                    "criterion is undefined for this data");
    }
    r.k_plus = kernel_for(S.s_plus, 0, N, kopts);
    r.k_minus_shift = kernel_for(S.s_minus, -2, N, kopts);
    r.k_minus = kernel_for(S.s_minus, 0, N, kopts);
    r.k_plus_shift = kernel_for(S.s_plus, -2, N, kopts);
    r.v_plus = r.s0 * std::sqrt(r.k_plus.k0 * r.k_minus_shift.k0);
    r.v_minus = r.s0 * std::sqrt(r.k_minus.k0 * r.k_plus_shift.k0);
    r.all_converged = r.k_plus.converged && r.k_minus_shift.converged &&
                      r.k_minus.converged && r.k_plus_shift.converged;
    return r;
}

// ---------------------------------------------------------------------------

ClosedFormCheck closed_form_kernel_check(const ScatteringMatrix& S, std::size_t N) {
    ClosedFormCheck out;
    if (!S.s_minus.is_zero() && S.s_minus.min_index() < 0) {
        out.reason = "s_minus is not analytic";
        return out;
    }
    if (std::abs(S.s_minus.coeff(0)) > 1e-12) {
        out.reason = "s_minus(0) != 0";
        return out;
    }
    out.a = S.s_minus.coeff(1);
    if (1.0 + out.a <= 1e-12) {
        out.reason = "1 + s_minus'(0) is not positive";
        return out;
    }
    out.applicable = true;

    // Exact consequences of analyticity: the unshifted minus kernel is the
    // constant 1, and the shift -2 block is a * E00, so k0 = 1 / (1 + a).
    KernelResult km = kernel_for(S.s_minus, 0, N, {});
    KernelResult kms = kernel_for(S.s_minus, -2, N, {});
    double d1 = (km.K - CircleFunction::constant(1.0)).max_abs_coeff();
    double d2 = std::abs(kms.k0 - 1.0 / (1.0 + out.a));
    out.base_defect = std::max(d1, d2);

    // Sampled identity: K_{s_plus}(z) = (1 + s_minus(z)/z) / (s(z) sqrt(1+a)).
    KernelResult kp = kernel_for(S.s_plus, 0, N, {});
    const double root = std::sqrt(1.0 + out.a);
    const double radii[] = {0.0, 0.3, 0.6, 0.9};
    const int n_angles = 16;
    for (double rad : radii) {
        for (int j = 0; j < n_angles; ++j) {
            if (rad == 0.0 && j > 0) break;
            double theta = 2.0 * M_PI * j / n_angles;
            cdouble z = rad * cdouble(std::cos(theta), std::sin(theta));
            cdouble sv = S.s.eval(z);
            if (std::abs(sv) < 1e-10) {
                ++out.skipped;
                continue;
            }
            // s_minus(z)/z extends to z = 0 with value s_minus'(0).
            cdouble ratio = (std::abs(z) < 1e-14)
                                ? cdouble(out.a, 0.0)
                                : S.s_minus.eval(z) / z;
            cdouble rhs = (1.0 + ratio) / (sv * root);
            cdouble lhs = kp.K.eval(z);
            out.identity_defect = std::max(out.identity_defect, std::abs(lhs - rhs));
            ++out.samples;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Candidates and targets of the approximation form of the criterion, all
// represented in the common pair space.
struct PairContext {
    std::vector<FunctionPair> cand;     // images of t^j, j = 0..d_max
    std::vector<FunctionPair> targets;  // images of the dual targets, sites 0, 1
};

PairContext build_pair_context(const ScatteringMatrix& S, int d_max,
                               std::size_t N) {
    PairContext ctx;
    // Candidates: images of t^j under the plus-side isometry
    // h -> (s h, s_plus h + t^-1 invol(h)).
    for (int j = 0; j <= d_max; ++j) {
        ctx.cand.push_back({S.s.shifted(j),
                            S.s_plus.shifted(j) + CircleFunction::monomial(-j - 1)});
    }
    // Targets: images of the minus-side basis vectors t^n K_n, n = -1, -2,
    // under the minus-side isometry h -> (t^-1 invol(h) + s_minus h, s h).
    // These represent the dual system at sites 0 and 1, the two functions
    // whose approximability decides uniqueness.
    for (int n : {-1, -2}) {
        KernelResult kn = kernel_for(S.s_minus, 2 * n, N, {});
        CircleFunction h = kn.K.shifted(n);
        ctx.targets.push_back({h.involute().shifted(-1) + S.s_minus * h, S.s * h});
    }
    return ctx;
}

// Distances of both targets from span{cand[0..d]} for each requested degree,
// in the pair norm. Row i of the result belongs to degrees[i].
std::vector<std::array<double, 2>> pair_distances(const PairContext& ctx,
                                                  const std::vector<int>& degrees) {
    StackedLayout layout;
    for (const auto& c : ctx.cand) layout.include(c.a, c.b);
    for (const auto& tgt : ctx.targets) layout.include(tgt.a, tgt.b);

    const int d_max = int(ctx.cand.size()) - 1;
    const double half = 1.0 / std::sqrt(2.0); // pair norm = ||stack|| with this scale
    Eigen::MatrixXd A(layout.rows(), d_max + 1);
    for (int j = 0; j <= d_max; ++j) {
        A.col(j) = layout.stack(ctx.cand[j].a, ctx.cand[j].b, half);
    }
    Eigen::VectorXd b0 = layout.stack(ctx.targets[0].a, ctx.targets[0].b, half);
    Eigen::VectorXd b1 = layout.stack(ctx.targets[1].a, ctx.targets[1].b, half);

    std::vector<std::array<double, 2>> out;
    for (int d : degrees) {
        int cols = std::clamp(d, 0, d_max) + 1;
        auto block = A.leftCols(cols);
        auto qr = block.colPivHouseholderQr();
        Eigen::VectorXd x0 = qr.solve(b0);
        Eigen::VectorXd x1 = qr.solve(b1);
        out.push_back({(b0 - block * x0).norm(), (b1 - block * x1).norm()});
    }
    return out;
}

} // namespace

ApproximationResiduals approximation_residuals(const ScatteringMatrix& S,
                                               const std::vector<int>& degrees,
                                               std::size_t N) {
    ApproximationResiduals out;
    if (degrees.empty()) return out;
    std::vector<int> ds = degrees;
    std::sort(ds.begin(), ds.end());
    PairContext ctx = build_pair_context(S, ds.back(), N);
    std::vector<std::array<double, 2>> res = pair_distances(ctx, ds);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out.residuals.emplace_back(ds[i], std::max(res[i][0], res[i][1]));
    }
    return out;
}

// ---------------------------------------------------------------------------

DensityReport density_diagnostic(const ScatteringMatrix& S, int d_max,
                                 std::size_t N) {
    DensityReport out;
    out.d_max = d_max;
    PairContext ctx = build_pair_context(S, d_max, N);

    // Representation cross-check: candidate pairings must reproduce the
    // weighted inner product, and targets must be unit vectors.
    for (int j : {0, 1, 2, 5}) {
        for (int k : {0, 1, 2, 5}) {
            if (j > d_max || k > d_max) continue;
            double lhs = pair_ip(ctx.cand[j], ctx.cand[k]);
            double rhs = weighted_inner_product(CircleFunction::monomial(j),
                                                CircleFunction::monomial(k),
                                                S.s_plus);
            out.consistency_defect =
                std::max(out.consistency_defect, std::abs(lhs - rhs));
        }
    }
    for (const auto& tgt : ctx.targets) {
        out.target_norm_defect =
            std::max(out.target_norm_defect, std::abs(pair_ip(tgt, tgt) - 1.0));
    }

    std::vector<std::array<double, 2>> res = pair_distances(ctx, {d_max});
    out.residuals = {res[0][0], res[0][1]};
    return out;
}

// ---------------------------------------------------------------------------

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::unique: return "unique";
        case Verdict::non_unique: return "non_unique";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

UniquenessReport assess_uniqueness(const ScatteringMatrix& S,
                                   const UniquenessOptions& opts) {
    UniquenessReport rep;
    rep.tol_crit = opts.tol_crit;
    rep.tol_match = opts.tol_match;

    rep.criterion = kernel_product_criterion(S, opts.basis.N, opts.basis.kernel);
    if (!rep.criterion.all_converged) {
        rep.flags.push_back("criterion kernels unconverged");
    }

    rep.plus = reconstruct_jacobi(S.s_plus, opts.basis);
    rep.minus = reconstruct_dual(S.s_minus, opts.basis);
    if (!rep.plus.ok) rep.flags.push_back("plus-side reconstruction not ok");
    if (!rep.minus.ok) rep.flags.push_back("minus-side reconstruction not ok");
    rep.reconstruction_distance =
        distance(rep.plus.J, rep.minus.J, -opts.basis.M, opts.basis.M);

    if (opts.with_diagnostics) {
        rep.closed_form = closed_form_kernel_check(S, opts.basis.N);
        if (!rep.closed_form.applicable) {
            rep.flags.push_back("closed-form check skipped: " + rep.closed_form.reason);
        }
        rep.approximation = approximation_residuals(S, opts.degrees, opts.basis.N);
        rep.density = density_diagnostic(S, opts.density_d_max, opts.basis.N);
        if (rep.density.consistency_defect > 1e-8) {
            rep.flags.push_back(format(
                "pair representation inconsistent with the weighted metric "
                "(defect %.3e)", rep.density.consistency_defect));
        }
    }

    double crit_dev = std::max(std::abs(rep.criterion.v_plus - 1.0),
                               std::abs(rep.criterion.v_minus - 1.0));
    bool solvers_ok = rep.criterion.all_converged && rep.plus.ok && rep.minus.ok;

    if (!solvers_ok) {
        rep.verdict = Verdict::inconclusive;
        rep.rationale = "solver trouble: " +
            format("criterion deviation %.3e, side distance %.3e, but at "
                   "least one stage reported problems",
                   crit_dev, rep.reconstruction_distance);
    } else if (crit_dev < opts.tol_crit &&
               rep.reconstruction_distance < opts.tol_match) {
        rep.verdict = Verdict::unique;
        rep.rationale = format(
            "criterion (v+, v-) = (%.12g, %.12g) within tolerance of (1, 1) "
            "and the two one-sided reconstructions agree to %.3e",
            rep.criterion.v_plus, rep.criterion.v_minus,
            rep.reconstruction_distance);
    } else if (crit_dev >= 10.0 * opts.tol_crit &&
               rep.reconstruction_distance >= 10.0 * opts.tol_match) {
        rep.verdict = Verdict::non_unique;
        rep.rationale = format(
            "criterion deviates from (1, 1) by %.3e and the one-sided "
            "reconstructions disagree by %.3e; the data has multiple "
            "preimages", crit_dev, rep.reconstruction_distance);
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.rationale = format(
            "criterion deviation %.3e and side distance %.3e fall between "
            "the confident-unique and confident-non-unique thresholds",
            crit_dev, rep.reconstruction_distance);
    }
    return rep;
}

// ---------------------------------------------------------------------------

RepairSearchResult repair_search(
    const ScatteringMatrix& S,
    const std::vector<std::pair<std::string, CircleFunction>>& candidates,
    const UniquenessOptions& opts) {
    RepairSearchResult out;
    for (const auto& [label, phi] : candidates) {
        RepairCandidateResult c;
        c.label = label;
        try {
            ScatteringMatrix twisted = repair(S, phi);
            c.admissible = true;
            c.report = assess_uniqueness(twisted, opts);
            if (out.found < 0 && c.report.verdict == Verdict::unique) {
                out.found = int(out.candidates.size());
            }
        } catch (const Error& e) {
            c.error = e.what();
        }
        out.candidates.push_back(std::move(c));
    }
    return out;
}

std::vector<std::pair<std::string, CircleFunction>> default_repair_candidates(
    double tol_inner) {
    std::vector<std::pair<std::string, CircleFunction>> out;
    out.emplace_back("t", CircleFunction::monomial(1));
    out.emplace_back("t^2", CircleFunction::monomial(2));
    out.emplace_back("t^3", CircleFunction::monomial(3));
    out.emplace_back("blaschke(0.5)", inner_symmetric_factory(0, {0.5}, tol_inner));
    out.emplace_back("t*blaschke(0.5)", inner_symmetric_factory(1, {0.5}, tol_inner));
    return out;
}

} // namespace jscat
