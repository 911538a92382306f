// transport_test.cpp — profiles, bond currents and asymptotic laws
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nesskit/errors.hpp"
#include "nesskit/ness.hpp"
#include "nesskit/transport.hpp"

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

} // namespace

TEST_CASE("ballistic ten-site chain: flat profile, uniform current") {
    const ChainParams p = driven(10, 0.0);
    const TransportReport rep = transport_report(analytic_ness(p), p);

    CHECK(rep.regime == Regime::ballistic);
    CHECK(rep.profile(0) == doctest::Approx(1.6).epsilon(1e-14));
    for (int i = 1; i < 9; ++i)
        CHECK(rep.profile(i) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(rep.profile(9) == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(rep.current == doctest::Approx(-0.4).epsilon(1e-14));
    for (int i = 0; i < 9; ++i)
        CHECK(rep.bond_currents(i) == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("probed chain develops a ramp that straddles the mean occupation") {
    const ChainParams p = driven(10, 1.0);
    const TransportReport rep = transport_report(analytic_ness(p), p);
    CHECK(rep.regime == Regime::diffusive);
    // D = 4 + 1 + 9 = 14: site 5 sits at 1.5 + 1/28, site 6 at 1.5 - 1/28.
    CHECK(rep.profile(4) == doctest::Approx(1.5 + 1.0 / 28.0).epsilon(1e-13));
    CHECK(rep.profile(5) == doctest::Approx(1.5 - 1.0 / 28.0).epsilon(1e-13));
    CHECK(rep.profile(4) > 1.5);
    CHECK(rep.profile(5) < 1.5);
    // Monotone decrease down the chain.
    for (int i = 0; i < 9; ++i)
        CHECK(rep.profile(i) > rep.profile(i + 1));
}

TEST_CASE("bond current indexing") {
    const ChainParams p = driven(11, 0.1);
    const MomentMatrices m = analytic_ness(p);
    CHECK(bond_current(m, p.lambda, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(bond_current(m, p.lambda, 10) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(bond_current(m, p.lambda, 0), std::invalid_argument);
    CHECK_THROWS_AS(bond_current(m, p.lambda, 11), std::invalid_argument);
}

TEST_CASE("non-stationary data is refused") {
    MomentMatrices m;
    m.C = Eigen::MatrixXcd::Zero(3, 3);
    m.B = Eigen::MatrixXcd::Zero(3, 3);
    m.C(0, 0) = 1.0;
    m.C(1, 0) = m.C(0, 1) = 0.1; // bond 1 carries 0.2
    m.C(2, 1) = m.C(1, 2) = 0.3; // bond 2 carries 0.6
    ChainParams p;
    p.L = 3;
    CHECK_THROWS_AS(transport_report(m, p), SolverError);
}

TEST_CASE("unphysical occupations are refused") {
    MomentMatrices m;
    m.C = Eigen::MatrixXcd::Zero(2, 2);
    m.B = Eigen::MatrixXcd::Zero(2, 2);
    m.C(0, 0) = -1.0;
    CHECK_THROWS_AS(occupation_profile(m), SolverError);
    m.C(0, 0) = std::complex<double>(1.0, 0.5);
    CHECK_THROWS_AS(occupation_profile(m), SolverError);
    m.C(0, 0) = -1e-13; // roundoff-scale negativity is clamped
    CHECK(occupation_profile(m)(0) == 0.0);
}

TEST_CASE("asymptotic current laws") {
    const AsymptoticCurrent a0 = asymptotic_current(driven(10, 0.0));
    CHECK(a0.ballistic == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK_FALSE(a0.diffusive_current_times_L.has_value());

    const AsymptoticCurrent a1 = asymptotic_current(driven(10, 0.1));
    CHECK(a1.diffusive_current_times_L.has_value());
    CHECK(*a1.diffusive_current_times_L == doctest::Approx(-20.0).epsilon(1e-15));

    // The finite-L current approaches the ballistic limit as Gamma -> 0 ...
    const ChainParams p = driven(40, 0.0);
    const TransportReport rep = transport_report(analytic_ness(p), p);
    CHECK(rep.current == doctest::Approx(a0.ballistic).epsilon(1e-13));

    // ... and J*L approaches the diffusive limit as L grows at fixed Gamma.
    const ChainParams big = driven(4000, 0.1);
    const TransportReport big_rep = transport_report(analytic_ness(big), big);
    CHECK(big_rep.current * 4000.0 ==
          doctest::Approx(*a1.diffusive_current_times_L).epsilon(2e-2));
}
