#pragma once

#include <complex>
#include <vector>

namespace jscat::poly {

// Polynomials are coefficient vectors low degree first: p[j] is the t^j term.

// Roots via the companion matrix. Trailing coefficients with
// |p[j]| <= 1e-14 * max|p| are stripped before forming it.
std::vector<std::complex<double>> roots(const std::vector<double>& p);

// Divides p by (t - r). Returns the quotient; *remainder (if given) gets p(r).
std::vector<double> deflate(const std::vector<double>& p, double r, double* remainder = nullptr);

// Taylor coefficients of 1/p(t) around 0, valid when p has no zeros in the
// closed unit disk (then the tail decays geometrically). Terminates once the
// last 8 coefficients fall below tail_tol * max seen so far; throws if
// max_terms is hit first (pole on or inside the circle, ill-posed input).
std::vector<double> recip_series(const std::vector<double>& p, double tail_tol = 1e-16,
                                 std::size_t max_terms = 1u << 18);

double eval(const std::vector<double>& p, double x);

} // namespace jscat::poly
