#pragma once

#include <vector>

#include "jscat/circle_fn.hpp"
#include "jscat/jacobi.hpp"
#include "jscat/smatrix.hpp"

namespace jscat {

enum class Direction { plus, minus };

// Jost solution of the three-term recurrence
//   p_n e(n-1) + q_n e(n) + p_{n+1} e(n+1) = (t + 1/t) e(n),
// normalized to e(n) = t^n above the perturbation. Every e(n) is an exact
// Laurent polynomial in t, so the recurrence is solved in exact coefficient
// algebra, not on a grid.
//
// Direction::minus runs the same propagation on the reflected matrix; index
// m of the stored solution then corresponds to site -m-1 of the original
// axis.
struct JostSolution {
    Direction direction = Direction::plus;
    int lo = 0;                    // lowest stored index
    std::vector<CircleFunction> e; // e[i] lives at index lo + i
    const CircleFunction& at(int n) const;
    int hi() const { return lo + int(e.size()) - 1; }
};

JostSolution jost_propagate(const JacobiMatrix& J, Direction dir = Direction::plus);

// Below the perturbation the Jost solution is a combination of the two free
// waves: e(n) = A t^n + B t^(-n-1). A and B are rational in t; both are
// returned as Laurent-polynomial numerators over the shared denominator
//   d(t) = t^(-2) - 1
// (the Wronskian of the free pair), read off from the bottom two rows.
struct ABNumerators {
    CircleFunction a_num; // A = a_num / d
    CircleFunction b_num; // B = b_num / d
};

ABNumerators read_ab(const JostSolution& jost);

// Full direct problem: two propagations (original and reflected matrix),
// rational reduction s = 1/A, s_minus = B/A, series expansion, and a
// consistency check that both runs produce the same transmission
// coefficient.
struct ScatteringExtraction {
    ScatteringMatrix S;
    ABNumerators plus_run;    // from the original matrix: s, s_minus
    ABNumerators minus_run;   // from the reflected matrix: s, s_plus
    double direction_defect = 0.0; // max coefficient gap between the two s
};

// Throws if a bound state is present (zero of A in the closed unit disk):
// the scattering data of such matrices does not determine them here, and
// the series for 1/A would diverge on the circle.
ScatteringExtraction extract_smatrix(const JacobiMatrix& J, double tail_tol = 1e-17);

} // namespace jscat
