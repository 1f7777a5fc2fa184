#pragma once

#include <cstddef>

#include "jscat/circle_fn.hpp"

namespace jscat {

// Scattering data on the unit circle, stored as real-coefficient Laurent
// expansions:
//   s       transmission coefficient (shared by both directions),
//   s_minus reflection seen from the left half-axis,
//   s_plus  reflection seen from the right half-axis.
// The matrix [[s, s_plus], [s_minus, s]] is unitary a.e. on |t| = 1 and the
// symmetry S(1/t) = conj(S(t)) holds automatically for real coefficients.
struct ScatteringMatrix {
    CircleFunction s;
    CircleFunction s_minus;
    CircleFunction s_plus;
};

struct ValidationReport {
    double defect_minus = 0.0;     // max | |s|^2 + |s_minus|^2 - 1 | on the grid
    double defect_plus = 0.0;      // max | |s|^2 + |s_plus|^2  - 1 |
    double defect_cross = 0.0;     // max | s_minus conj(s) + s conj(s_plus) |
    double unitarity_defect = 0.0; // max of the three above
    double symmetry_defect = 0.0;  // identically 0 for real coefficients
    OuterReport outer;             // outer test applied to s
    std::size_t grid = 0;
    bool passes = false;
};

// Grid check of unitarity plus the outer test on s. grid = 0 picks a
// power-of-two grid at least 4x the largest coefficient window.
ValidationReport validate(const ScatteringMatrix& S,
                          double tol_unitary = 1e-10,
                          double tol_outer = 1e-2,
                          std::size_t grid = 0);

// The family with analytic reflection coefficients:
//   s = (1 - Delta)/2, s_minus = s_plus = (1 + Delta)/2,
// valid for any inner Delta with Delta(0) real and Delta != 1. Rejects
// inputs whose modulus deviates from 1 on the grid by more than tol_inner,
// and degenerate inputs for which validation fails (e.g. Delta = 1, which
// collapses s to 0).
ScatteringMatrix analytic_smatrix(const CircleFunction& delta,
                                  double tol_inner = 1e-10,
                                  double tol_unitary = 1e-10);

// Scattering data of the three-coefficient perturbation
//   q_{-1} = qm1, q_0 = q0, p_0 = p0  (all other p = 1, q = 0),
// computed through the generic extraction path. Parameter sets whose
// coefficient block [[qm1, p0], [p0, q0]] has operator norm > 1 produce a
// bound state and are rejected.
ScatteringMatrix rank3_smatrix(double p0, double q0, double qm1);

// Twist the reflection pair by an inner function:
//   (s, s_minus, s_plus) -> (s, s_minus * phi, s_plus * phi(1/t)).
// Preserves unitarity and the symmetry; used to search for scattering data
// that shares s and |s_minus| with the input but reconstructs differently.
ScatteringMatrix repair(const ScatteringMatrix& S,
                        const CircleFunction& phi,
                        double tol_inner = 1e-10,
                        double tol_unitary = 1e-10);

} // namespace jscat
