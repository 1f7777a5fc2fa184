#include <doctest.h>

#include <cmath>

#include "jscat/smatrix.hpp"

using namespace jscat;

TEST_CASE("smatrix: validation of the trivial data") {
    ScatteringMatrix S;
    S.s = CircleFunction::constant(1.0);
    ValidationReport rep = validate(S);
    CHECK(rep.unitarity_defect <= 1e-14);
    CHECK(rep.symmetry_defect == 0.0);
    CHECK(rep.outer.conclusive);
    CHECK(rep.outer.is_outer);
    CHECK(rep.passes);
    CHECK(rep.grid == 4096);
}

TEST_CASE("smatrix: validation flags non-unitary data") {
    ScatteringMatrix S;
    S.s = CircleFunction::constant(0.9); // |s|^2 = 0.81, nothing compensates
    ValidationReport rep = validate(S);
    CHECK(rep.unitarity_defect == doctest::Approx(0.19).epsilon(1e-12));
    CHECK(!rep.passes);
}

TEST_CASE("smatrix: analytic family with monomial inner factor") {
    CircleFunction delta = CircleFunction::monomial(2); // Delta = t^2
    ScatteringMatrix S = analytic_smatrix(delta);

    CHECK(S.s == CircleFunction::from_coeffs({{0, 0.5}, {2, -0.5}}));
    CHECK(S.s_minus == CircleFunction::from_coeffs({{0, 0.5}, {2, 0.5}}));
    CHECK(S.s_plus == S.s_minus);

    ValidationReport rep = validate(S);
    CHECK(rep.unitarity_defect <= 1e-12);
    // s has simple zeros at t = +-1 on the circle; the quadrature bias of
    // the outer test stays within the documented envelope.
    CHECK(rep.outer.conclusive);
    CHECK(rep.outer.is_outer);
    CHECK(rep.outer.excluded == 2);
    CHECK(rep.outer.defect < 5e-3);
    CHECK(rep.passes);
}

TEST_CASE("smatrix: analytic family with Delta = t^4") {
    ScatteringMatrix S = analytic_smatrix(CircleFunction::monomial(4));
    CHECK(S.s.coeff(4) == -0.5);
    CHECK(validate(S).passes);
}

TEST_CASE("smatrix: analytic family rejects degenerate and non-inner input") {
    CHECK_THROWS_WITH_AS(analytic_smatrix(CircleFunction::constant(1.0)),
                         doctest::Contains("inconclusive"), Error);
    CHECK_THROWS_AS(analytic_smatrix(CircleFunction::monomial(1, 0.9)), Error);
    CHECK_THROWS_AS(analytic_smatrix(CircleFunction{}), Error);
    CHECK_THROWS_WITH_AS(analytic_smatrix(CircleFunction::monomial(-1)),
                         doctest::Contains("analytic"), Error);
}

TEST_CASE("smatrix: analytic family with a Blaschke inner factor") {
    CircleFunction delta = inner_symmetric_factory(1, {0.5});
    ScatteringMatrix S = analytic_smatrix(delta, 1e-10, 1e-8);
    ValidationReport rep = validate(S, 1e-8);
    CHECK(rep.unitarity_defect <= 1e-8);
    CHECK(rep.passes);
    CHECK(S.s.coeff(0) == doctest::Approx(0.5).epsilon(1e-12)); // Delta(0) = 0
}

TEST_CASE("smatrix: rank-three constructor rejects p0 = 2") {
    CHECK_THROWS_WITH_AS(rank3_smatrix(2.0, 0.0, 0.0), doctest::Contains("bound state"), Error);
}

TEST_CASE("smatrix: repair twists the reflection pair and preserves unitarity") {
    ScatteringMatrix S = analytic_smatrix(CircleFunction::monomial(2));

    ScatteringMatrix R = repair(S, CircleFunction::monomial(1));
    CHECK(R.s == S.s); // transmission untouched
    CHECK(R.s_minus == CircleFunction::from_coeffs({{1, 0.5}, {3, 0.5}}));
    CHECK(R.s_plus == CircleFunction::from_coeffs({{-1, 0.5}, {1, 0.5}}));
    CHECK(validate(R).unitarity_defect <= 1e-12);

    // The constant inner function 1 is the identity twist.
    ScatteringMatrix I = repair(S, CircleFunction::constant(1.0));
    CHECK(I.s_minus == S.s_minus);
    CHECK(I.s_plus == S.s_plus);

    // Twisting by -1 flips signs only.
    ScatteringMatrix N = repair(S, CircleFunction::constant(-1.0));
    CHECK(N.s_minus == S.s_minus.scaled(-1.0));

    CHECK_THROWS_AS(repair(S, CircleFunction::constant(0.5)), Error);
    CHECK_THROWS_AS(repair(S, CircleFunction{}), Error);
}

TEST_CASE("smatrix: repair with a Blaschke factor keeps validation green") {
    ScatteringMatrix S = rank3_smatrix(0.5, -0.4, 0.1);
    CircleFunction phi = inner_symmetric_factory(0, {0.5});
    ScatteringMatrix R = repair(S, phi, 1e-10, 1e-8);
    ValidationReport rep = validate(R, 1e-8);
    CHECK(rep.passes);
    CHECK(R.s == S.s);
    // |s_minus| is unchanged on the circle: check one sample magnitude.
    auto before = sample(S.s_minus, 4096 * 2).values;
    auto after = sample(R.s_minus, 4096 * 2).values;
    double worst = 0.0;
    for (std::size_t j = 0; j < before.size(); ++j)
        worst = std::max(worst, std::abs(std::abs(before[j]) - std::abs(after[j])));
    CHECK(worst <= 1e-8);
}
