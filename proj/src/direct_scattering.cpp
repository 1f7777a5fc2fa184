#include "jscat/direct_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jscat/poly.hpp"

namespace jscat {

const CircleFunction& JostSolution::at(int n) const {
    if (n < lo || n > hi())
        throw Error("JostSolution::at: index " + std::to_string(n) + " outside stored range [" +
                    std::to_string(lo) + ", " + std::to_string(hi()) + "]");
    return e[size_t(n - lo)];
}

namespace {

// Rows at which the recurrence differs from the free one: row n involves
// q_n, p_n and p_{n+1}, so a perturbed p_n touches rows n-1 and n.
void nonfree_rows(const JacobiMatrix& J, int& n_lo, int& n_hi) {
    bool any = false;
    n_lo = 0;
    n_hi = 0;
    auto include = [&](int row) {
        if (!any) {
            n_lo = n_hi = row;
            any = true;
        } else {
            n_lo = std::min(n_lo, row);
            n_hi = std::max(n_hi, row);
        }
    };
    for (const auto& [n, e] : J.entries()) {
        if (e.q != 0.0) include(n);
        if (e.p != 1.0) {
            include(n - 1);
            include(n);
        }
    }
}

JostSolution propagate_plus(const JacobiMatrix& J) {
    if (J.truncated())
        throw Error("jost_propagate: requires an exactly supported matrix, not a truncated one");

    int n_lo = 0, n_hi = 0;
    nonfree_rows(J, n_lo, n_hi);

    const int top = n_hi + 2;    // two free seed rows above the support
    const int bottom = n_lo - 2; // two rows below, for reading A and B

    JostSolution out;
    out.direction = Direction::plus;
    out.lo = bottom;
    out.e.assign(size_t(top - bottom + 1), CircleFunction{});

    auto slot = [&](int n) -> CircleFunction& { return out.e[size_t(n - bottom)]; };

    slot(top) = CircleFunction::monomial(top);
    slot(top - 1) = CircleFunction::monomial(top - 1);
    for (int n = top - 1; n > bottom; --n) {
        // p_n e(n-1) = (z - q_n) e(n) - p_{n+1} e(n+1)
        CircleFunction rhs = mul_by_z(slot(n)) + slot(n).scaled(-J.q(n)) +
                             slot(n + 1).scaled(-J.p(n + 1));
        slot(n - 1) = rhs.scaled(1.0 / J.p(n));
    }
    return out;
}

} // namespace

JostSolution jost_propagate(const JacobiMatrix& J, Direction dir) {
    if (dir == Direction::plus) return propagate_plus(J);
    JostSolution out = propagate_plus(J.reflected());
    out.direction = Direction::minus;
    return out;
}

ABNumerators read_ab(const JostSolution& jost) {
    if (jost.e.size() < 2) throw Error("read_ab: need at least two stored rows");
    // Both stored bottom rows lie strictly below the perturbation, where
    // e(n) = A t^n + B t^(-n-1). Solving the 2x2 system at the adjacent pair
    // (n0 - 1, n0) and clearing the Wronskian denominator d = t^(-2) - 1:
    const int n0 = jost.lo + 1;
    const CircleFunction& e_below = jost.at(n0 - 1);
    const CircleFunction& e_at = jost.at(n0);
    ABNumerators ab;
    ab.a_num = e_below.shifted(-n0 - 1) - e_at.shifted(-n0);
    ab.b_num = e_at.shifted(n0 - 1) - e_below.shifted(n0);
    // The entries are rational combinations of the coefficients; subtraction
    // cancellation can leave dust many orders below the genuine entries.
    ab.a_num = ab.a_num.cleaned(1e-12);
    ab.b_num = ab.b_num.cleaned(1e-12);
    return ab;
}

namespace {

// Series expansion of the rational pair
//   s = d / N_A,  s_minus = N_B / N_A,   d = t^(-2) - 1 = t^(-2) (1 - t^2).
// Circle zeros of N_A at t = +-1 (resonances) must be simple and are
// cancelled against the matching factor of d; the reflection numerator is
// forced to share them, otherwise s_minus would be unbounded. What remains
// of N_A must be zero-free in the closed unit disk -- a zero there is a
// bound state and the data is rejected.
void expand_rational(const ABNumerators& ab, double tail_tol, CircleFunction& s_out,
                     CircleFunction& s_minus_out) {
    if (ab.a_num.is_zero()) throw Error("extract_smatrix: transmission numerator vanished");

    const int k_a = ab.a_num.min_index();
    std::vector<double> pa(ab.a_num.raw());
    std::vector<double> d_poly = {1.0, 0.0, -1.0}; // 1 - t^2

    const bool has_b = !ab.b_num.is_zero();
    const int k_b = has_b ? ab.b_num.min_index() : 0;
    std::vector<double> pb = has_b ? ab.b_num.raw() : std::vector<double>{};

    auto peak = [](const std::vector<double>& p) {
        double m = 0.0;
        for (double c : p) m = std::max(m, std::abs(c));
        return m;
    };

    for (double r : {1.0, -1.0}) {
        if (std::abs(poly::eval(pa, r)) > 1e-9 * peak(pa)) continue;
        double rem = 0.0;
        pa = poly::deflate(pa, r, &rem);
        if (std::abs(poly::eval(pa, r)) <= 1e-9 * peak(pa))
            throw Error("extract_smatrix: transmission numerator vanishes to second order at t=" +
                        std::to_string(r) + "; s would be unbounded on the circle");
        d_poly = poly::deflate(d_poly, r, &rem);
        if (has_b) {
            if (std::abs(poly::eval(pb, r)) > 1e-8 * peak(pb))
                throw Error("extract_smatrix: reflection numerator does not share the circle "
                            "zero of the transmission numerator at t=" + std::to_string(r));
            pb = poly::deflate(pb, r, &rem);
        }
    }

    for (const auto& root : poly::roots(pa)) {
        if (std::abs(root) <= 1.0 + 1e-10)
            throw Error("extract_smatrix: bound state present (zero of A at |t| = " +
                        std::to_string(std::abs(root)) + " inside the closed unit disk)");
    }
    // s(0) = product of the off-diagonal coefficients, strictly positive; a
    // leading index other than -2 would put a zero or pole of A at t = 0.
    if (k_a != -2)
        throw Error(k_a > -2 ? "extract_smatrix: bound state present (zero of A at t = 0)"
                             : "extract_smatrix: internal error, A has a pole at t = 0");

    std::vector<double> recip = poly::recip_series(pa, tail_tol);
    CircleFunction recip_fn = CircleFunction::from_span(0, std::move(recip));
    s_out = CircleFunction::from_span(0, std::move(d_poly)) * recip_fn;
    s_minus_out = has_b ? CircleFunction::from_span(k_b - k_a, std::move(pb)) * recip_fn
                        : CircleFunction{};
}

} // namespace

ScatteringExtraction extract_smatrix(const JacobiMatrix& J, double tail_tol) {
    ScatteringExtraction out;
    out.plus_run = read_ab(jost_propagate(J, Direction::plus));
    out.minus_run = read_ab(jost_propagate(J, Direction::minus));

    CircleFunction s_fwd, s_bwd;
    expand_rational(out.plus_run, tail_tol, s_fwd, out.S.s_minus);
    expand_rational(out.minus_run, tail_tol, s_bwd, out.S.s_plus);

    out.direction_defect = (s_fwd - s_bwd).max_abs_coeff();
    const double scale = std::max(1.0, s_fwd.max_abs_coeff());
    if (out.direction_defect > 1e-9 * scale)
        throw Error("extract_smatrix: the two propagation directions disagree on s (defect " +
                    std::to_string(out.direction_defect) + "); inconsistent input");
    out.S.s = std::move(s_fwd);
    return out;
}

} // namespace jscat
