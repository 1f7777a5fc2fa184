#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "jscat/hankel.hpp"
#include "jscat/smatrix.hpp"

using namespace jscat;

namespace {

CircleFunction random_poly(std::mt19937& rng, int lo, int deg) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> c(std::size_t(deg + 1));
    for (auto& x : c) x = U(rng);
    return CircleFunction::from_span(lo, std::move(c));
}

} // namespace

TEST_CASE("hankel: entries follow the generator rule") {
    // Symbol (1 + t^2)/2 with shift -2: entries sigma_hat(1 - j - k).
    CircleFunction sm = CircleFunction::from_coeffs({{0, 0.5}, {2, 0.5}});
    HankelOperator H(sm, -2, 4);
    CHECK(H.entry(0, 0) == 0.0);   // index 1 of the symbol
    CHECK(H.entry(0, 1) == 0.5);   // index 0
    CHECK(H.entry(1, 0) == 0.5);
    CHECK(H.entry(1, 1) == 0.0);   // index -1
    CHECK(H.entry(2, 3) == 0.0);
    CHECK(H.generator().size() == 7);

    // Same symbol, no shift: every accessed index is negative, H = 0.
    HankelOperator H0(sm, 0, 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) CHECK(H0.entry(j, k) == 0.0);
}

TEST_CASE("hankel: single-entry operator has the exact closed-form kernel") {
    // sigma = a t^{-1}, shift 0: H = a E_00, so k0 = 1/(1+a) exactly.
    for (double a : {0.0, 0.5, -0.3}) {
        HankelOperator H(CircleFunction::monomial(-1, a), 0, 16);
        KernelResult r = reproducing_kernel(H);
        CHECK(r.direct);
        CHECK(r.converged);
        CHECK(r.k0 == doctest::Approx(1.0 / (1.0 + a)).epsilon(1e-12));
        CHECK(r.K.coeff(0) == doctest::Approx(std::sqrt(1.0 / (1.0 + a))).epsilon(1e-12));
        CHECK(r.k.window() <= 1); // support is exactly {0}
    }
}

TEST_CASE("hankel: frozen kernel for the analytic-reflection example") {
    // sigma = (1+t^2)/2 shifted by t^{-2}: the 2x2 block [[0, 1/2],[1/2, 0]],
    // metric [[1, 1/2],[1/2, 1]], solution k = 4/3 - (2/3) t.
    CircleFunction sm = CircleFunction::from_coeffs({{0, 0.5}, {2, 0.5}});
    for (std::size_t N : {2u, 8u, 256u}) {
        HankelOperator H(sm, -2, N);
        KernelResult r = reproducing_kernel(H);
        CHECK(r.direct);
        CHECK(r.k0 == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
        CHECK(r.k.coeff(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
        CHECK(r.k.coeff(1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
        CHECK(r.k.max_index() == 1); // exact finite support, independent of N
        CHECK(r.K.coeff(0) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
        // Inverse iteration gives an estimate, not an eigensolve: loose check.
        CHECK(r.lambda_min == doctest::Approx(0.5).epsilon(1e-4));
    }
}

TEST_CASE("hankel: epsilon schedule is monotone and converges to the direct value") {
    CircleFunction sm = CircleFunction::from_coeffs({{0, 0.5}, {2, 0.5}});
    HankelOperator H(sm, -2, 32);

    KernelOptions opts;
    opts.force_schedule = true;
    KernelResult r = reproducing_kernel(H, opts);
    CHECK(!r.direct);
    CHECK(r.converged);
    REQUIRE(r.epsilon_trace.size() == 9);
    // k0(eps) grows monotonically as the regularization is released.
    for (std::size_t i = 1; i < r.epsilon_trace.size(); ++i) {
        CHECK(r.epsilon_trace[i].first < r.epsilon_trace[i - 1].first);
        CHECK(r.epsilon_trace[i].second >= r.epsilon_trace[i - 1].second - 1e-14);
    }
    CHECK(r.k0 == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

    KernelOptions bad;
    bad.epsilon_schedule = {1e-4, 1e-3}; // increasing: rejected
    bad.force_schedule = true;
    CHECK_THROWS_AS(reproducing_kernel(H, bad), Error);
}

TEST_CASE("hankel: metric sections of scattering symbols are positive") {
    ScatteringMatrix A = analytic_smatrix(CircleFunction::monomial(2));
    ScatteringMatrix B = rank3_smatrix(0.5, -0.4, 0.1);
    for (const CircleFunction* sigma : {&A.s_plus, &B.s_plus, &B.s_minus}) {
        for (int shift : {0, -2, -8}) {
            HankelOperator H(*sigma, shift, 32);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.dense_plus_identity());
            CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("hankel: weighted inner product agrees with the dense quadratic form") {
    std::mt19937 rng(4242);
    ScatteringMatrix B = rank3_smatrix(0.5, -0.4, 0.1);
    const std::size_t N = 24;

    for (int shift : {0, -2, -6}) {
        HankelOperator H(B.s_plus, shift, N);
        Eigen::MatrixXd M = H.dense_plus_identity();
        CircleFunction sigma_total = B.s_plus.shifted(shift);
        for (int trial = 0; trial < 10; ++trial) {
            CircleFunction f = random_poly(rng, 0, int(N) - 1);
            CircleFunction g = random_poly(rng, 0, int(N) - 1);
            Eigen::VectorXd fv = Eigen::VectorXd::Zero(long(N)), gv = fv;
            for (std::size_t j = 0; j < N; ++j) {
                fv[long(j)] = f.coeff(int(j));
                gv[long(j)] = g.coeff(int(j));
            }
            const double dense = fv.dot(M * gv);
            const double fast = weighted_inner_product(f, g, sigma_total);
            CHECK(fast == doctest::Approx(dense).epsilon(1e-12));
        }
    }
}

TEST_CASE("hankel: weighted inner product handles Laurent arguments symmetrically") {
    std::mt19937 rng(777);
    ScatteringMatrix B = rank3_smatrix(0.5, -0.4, 0.1);
    for (int trial = 0; trial < 10; ++trial) {
        CircleFunction f = random_poly(rng, -5, 9);
        CircleFunction g = random_poly(rng, -3, 7);
        const double a = weighted_inner_product(f, g, B.s_plus);
        const double b = weighted_inner_product(g, f, B.s_plus);
        CHECK(a == doctest::Approx(b).epsilon(1e-11));
    }
    // Zero symbol reduces to the plain l2 pairing.
    CircleFunction f = CircleFunction::from_coeffs({{-1, 2.0}, {3, 1.5}});
    CircleFunction g = CircleFunction::from_coeffs({{-1, 0.5}, {3, -2.0}});
    CHECK(weighted_inner_product(f, g, CircleFunction{}) == doctest::Approx(-2.0));
}

TEST_CASE("hankel: reproducing property of the kernel") {
    std::mt19937 rng(31337);
    ScatteringMatrix B = rank3_smatrix(0.5, -0.4, 0.1);

    struct Probe { const CircleFunction* sigma; int shift; std::size_t N; };
    CircleFunction sm_t2 = CircleFunction::from_coeffs({{0, 0.5}, {2, 0.5}});
    for (const Probe& pr : {Probe{&B.s_plus, -2, 64}, Probe{&sm_t2, -2, 8}}) {
        HankelOperator H(*pr.sigma, pr.shift, pr.N);
        KernelResult r = reproducing_kernel(H);
        CircleFunction sigma_total = pr.sigma->shifted(pr.shift);
        for (int trial = 0; trial < 8; ++trial) {
            CircleFunction f = random_poly(rng, 0, int(pr.N) - 1);
            const double ip = weighted_inner_product(f, r.k, sigma_total);
            CHECK(ip == doctest::Approx(f.coeff(0)).epsilon(1e-11));
        }
    }
}
