// ness_test.cpp — steady-state solvers agree with each other and with hand oracles
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nesskit/chain.hpp"
#include "nesskit/errors.hpp"
#include "nesskit/ness.hpp"

using namespace nesskit;

namespace {

ChainParams driven(int L, double Gamma) {
    ChainParams p;
    p.L = L;
    p.Gamma = Gamma;
    p.left.nbar = 2.0;
    p.right.nbar = 1.0;
    return p;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("closed form on two sites matches the hand solution") {
    // D = 4 lambda^2 + gamma^2 = 5, x = (N_L - N_1)/5 = -0.2, occupations
    // (N_1+N_L)/2 -+ gamma^2 (N_1-N_L)/(2 D) = 1.5 +- 0.1.
    const Eigen::MatrixXcd C = analytic_ness_c(driven(2, 0.0));
    CHECK(C(0, 0).real() == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(C(1, 1).real() == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(C(0, 1).real() == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(C(1, 0).real() == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(max_abs_diff(C, C.adjoint()) == 0.0);
}

TEST_CASE("closed form on ten sites: flat bulk without probes") {
    const Eigen::MatrixXcd C = analytic_ness_c(driven(10, 0.0));
    CHECK(C(0, 0).real() == doctest::Approx(1.6).epsilon(1e-14));
    for (int i = 1; i < 9; ++i)
        CHECK(C(i, i).real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(C(9, 9).real() == doctest::Approx(1.4).epsilon(1e-14));
    for (int i = 0; i < 9; ++i) {
        CHECK(C(i, i + 1).real() == doctest::Approx(-0.2).epsilon(1e-14));
        CHECK(C(i + 1, i).real() == doctest::Approx(-0.2).epsilon(1e-14));
    }
    // Tridiagonal with exactly zero fill outside the band.
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 10; ++i)
            if (std::abs(i - j) > 1)
                CHECK(C(i, j) == 0.0);
}

TEST_CASE("closed form on eleven sites with probes: linear ramp plus end kicks") {
    // D = 4 + 1 + 0.1 * 10 = 6: x = -1/6, first/last occupations 5/3 and 4/3.
    const Eigen::MatrixXcd C = analytic_ness_c(driven(11, 0.1));
    CHECK(C(0, 1).real() == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
    CHECK(C(0, 0).real() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(C(10, 10).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    // Interior occupations: 1.5 + [gamma (N_1-N_L) / (2D)] Gamma (L - 2s + 1).
    for (int i = 1; i < 10; ++i)
        CHECK(C(i, i).real() ==
              doctest::Approx(1.5 + 0.1 / 12.0 * (10.0 - 2.0 * i)).epsilon(1e-12));
}

TEST_CASE("scalar Lyapunov equation") {
    Eigen::MatrixXcd A(1, 1), Q(1, 1);
    A << std::complex<double>(-2.0, 0.0);
    Q << std::complex<double>(4.0, 0.0);
    const Eigen::MatrixXcd X = solve_lyapunov_dense(A, Q);
    CHECK(std::abs(X(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("A = -identity gives X = Q/2") {
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Random(3, 3);
    Q = (Q + Q.adjoint()).eval() + 6.0 * Eigen::MatrixXcd::Identity(3, 3);
    const Eigen::MatrixXcd A = -Eigen::MatrixXcd::Identity(3, 3);
    CHECK(max_abs_diff(solve_lyapunov_dense(A, Q), 0.5 * Q) < 1e-12);
}

TEST_CASE("non-Hurwitz drift is rejected") {
    Eigen::MatrixXcd A(1, 1), Q(1, 1);
    A << std::complex<double>(0.5, 0.0);
    Q << std::complex<double>(1.0, 0.0);
    CHECK_THROWS_AS(solve_lyapunov_dense(A, Q), SolverError);
    A(0, 0) = 0.0; // marginal drift has no unique stationary point either
    CHECK_THROWS_AS(solve_lyapunov_dense(A, Q), SolverError);
}

TEST_CASE("closed form equals the vectorized solve") {
    for (const ChainParams& p :
         {driven(2, 0.0), driven(5, 0.3), driven(8, 0.0), driven(6, 2.0)}) {
        const MomentMatrices exact = analytic_ness(p);
        const MomentMatrices solved = solve_self_consistent(p);
        CHECK(max_abs_diff(exact.C, solved.C) < 1e-12);
        CHECK(solved.B.isZero(0.0)); // no squeezing anywhere
    }
}

TEST_CASE("closed form equals the vectorized solve with squeezed baths") {
    ChainParams p = driven(5, 0.4);
    p.omega = 1.1;
    p.left.r = 0.5;
    p.left.theta = std::numbers::pi / 2;
    p.right.r = 0.2;
    p.right.theta = 1.0;
    const MomentMatrices exact = analytic_ness(p);
    const MomentMatrices solved = solve_self_consistent(p);
    CHECK(max_abs_diff(exact.C, solved.C) < 1e-12);
    CHECK(max_abs_diff(exact.B, solved.B) < 1e-12);
    CHECK(max_abs_diff(solved.B, solved.B.transpose()) < 1e-12);
    CHECK(max_abs_diff(solved.C, solved.C.adjoint()) < 1e-12);
}

TEST_CASE("the steady state does not depend on omega") {
    ChainParams p0 = driven(6, 0.2);
    ChainParams p5 = p0;
    p5.omega = 5.0;
    const MomentMatrices a = solve_self_consistent(p0);
    const MomentMatrices b = solve_self_consistent(p5);
    CHECK(max_abs_diff(a.C, b.C) < 1e-12);
}

TEST_CASE("damped fixed-point iteration reaches the same state") {
    const ChainParams p = driven(6, 0.5);
    const MomentMatrices it = solve_self_consistent_fixed_point(p);
    const MomentMatrices direct = solve_self_consistent(p);
    CHECK(max_abs_diff(it.C, direct.C) < 1e-10);
}

TEST_CASE("RK4 reproduces scalar relaxation") {
    // dC/dt = -C + 3, C(0) = 0: C(t) = 3 (1 - e^{-t}).
    Eigen::MatrixXcd A(1, 1), Q(1, 1), X0(1, 1);
    A << std::complex<double>(-0.5, 0.0);
    Q << std::complex<double>(3.0, 0.0);
    X0 << std::complex<double>(0.0, 0.0);
    const Eigen::MatrixXcd X = integrate_lyapunov(A, Q, 0.0, X0, 10.0, 0.01);
    CHECK(std::abs(X(0, 0) - 3.0 * (1.0 - std::exp(-10.0))) < 1e-9);
}

TEST_CASE("transient integration converges onto the steady state") {
    const ChainParams p = driven(6, 0.1);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(6, 6);
    const MomentMatrices end = evolve_transient(p, zero, zero, 200.0, 0.05);
    const MomentMatrices target = solve_self_consistent(p);
    CHECK(max_abs_diff(end.C, target.C) < 1e-6);
}

TEST_CASE("closed form satisfies the stationary equation at large L") {
    for (int L : {50, 200}) {
        const ChainParams p = driven(L, 0.1);
        const DriftNoise dn = build_drift_noise(p);
        const Eigen::MatrixXcd C = analytic_ness_c(p);
        CHECK(stationary_residual(dn.W, dn.F_N.cast<std::complex<double>>(), p.Gamma, C) <
              1e-10);
    }
}

TEST_CASE("squeezed closed form satisfies the stationary equation") {
    ChainParams p = driven(40, 0.3);
    p.left.r = 0.4;
    p.left.theta = 2.0;
    const DriftNoise dn = build_drift_noise(p);
    const Eigen::MatrixXcd B = analytic_ness_b(p);
    CHECK(stationary_residual(dn.W, dn.F_M, p.Gamma, B) < 1e-10);
}
