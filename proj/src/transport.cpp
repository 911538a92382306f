// transport.cpp — transport observables of stationary states
#include "nesskit/transport.hpp"

#include <cmath>
#include <fmt/format.h>

#include "nesskit/errors.hpp"

namespace nesskit {

Eigen::VectorXd occupation_profile(const MomentMatrices& m) {
    const Eigen::Index L = m.C.rows();
    Eigen::VectorXd profile(L);
    for (Eigen::Index i = 0; i < L; ++i) {
        const std::complex<double> c = m.C(i, i);
        if (std::abs(c.imag()) >= 1e-8)
            throw SolverError(fmt::format(
                "occupation at site {} has imaginary part {:.17g}", i + 1, c.imag()));
        if (c.real() < -1e-12)
            throw SolverError(fmt::format(
                "occupation at site {} is negative: {:.17g}", i + 1, c.real()));
        profile(i) = std::max(c.real(), 0.0);
    }
    return profile;
}

double bond_current(const MomentMatrices& m, double lambda, int bond) {
    const Eigen::Index L = m.C.rows();
    if (bond < 1 || bond >= L)
        throw std::invalid_argument(
            fmt::format("bond index {} must lie in [1, {}]", bond, L - 1));
    // C(i, i-1) = <a_{bond}^dag a_{bond+1}> with 0-based i = bond.
    return 2.0 * lambda * m.C(bond, bond - 1).real();
}

TransportReport transport_report(const MomentMatrices& m, const ChainParams& p) {
    if (m.C.rows() != p.L)
        throw std::invalid_argument("moment matrix size does not match chain length");

    TransportReport rep;
    rep.profile = occupation_profile(m);
    rep.bond_currents.resize(p.L - 1);
    for (int i = 1; i < p.L; ++i)
        rep.bond_currents(i - 1) = bond_current(m, p.lambda, i);

    const double j_max = rep.bond_currents.maxCoeff();
    const double j_min = rep.bond_currents.minCoeff();
    const double scale = std::max(1.0, rep.bond_currents.cwiseAbs().maxCoeff());
    if (j_max - j_min > 1e-10 * scale)
        throw SolverError(fmt::format(
            "state is not stationary: bond currents spread over [{:.17g}, {:.17g}]",
            j_min, j_max));
    rep.current = rep.bond_currents(0);
    rep.regime = p.Gamma > 0.0 ? Regime::diffusive : Regime::ballistic;
    return rep;
}

AsymptoticCurrent asymptotic_current(const ChainParams& p) {
    validate(p);
    const double n1 = squeezing_to_moments(p.left).N;
    const double nL = squeezing_to_moments(p.right).N;
    const double lam2 = p.lambda * p.lambda;

    AsymptoticCurrent a;
    a.ballistic = 2.0 * p.gamma * lam2 * (nL - n1) / (4.0 * lam2 + p.gamma * p.gamma);
    if (p.Gamma > 0.0)
        a.diffusive_current_times_L = 2.0 * lam2 * (nL - n1) / p.Gamma;
    return a;
}

} // namespace nesskit
