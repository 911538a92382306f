// transport.hpp — occupation profiles, bond currents and asymptotic current laws
#pragma once

#include <optional>

#include <Eigen/Dense>

#include "nesskit/chain.hpp"
#include "nesskit/ness.hpp"

namespace nesskit {

enum class Regime { ballistic, diffusive };

struct TransportReport {
    Eigen::VectorXd profile;       // <a_i^dag a_i>, sites 1..L
    Eigen::VectorXd bond_currents; // J_i on bonds (i, i+1), i = 1..L-1
    double current = 0.0;          // the common bond value
    Regime regime = Regime::ballistic;
};

// Site occupations from the diagonal of C. Throws SolverError when a diagonal
// entry has imaginary part >= 1e-8 or real part below -1e-12; negatives above
// that floor are clamped to zero.
Eigen::VectorXd occupation_profile(const MomentMatrices& m);

// Particle current on bond `bond` (1-based, connecting sites bond and bond+1):
// J = 2 lambda Re <a_bond^dag a_{bond+1}>.
double bond_current(const MomentMatrices& m, double lambda, int bond);

// Full profile + all bond currents for a stationary state. Stationarity forces
// every bond to carry the same current; a spread above 1e-10 (relative to the
// current magnitude) throws SolverError. The regime is diffusive iff Gamma > 0.
TransportReport transport_report(const MomentMatrices& m, const ChainParams& p);

// Closed-form large-L limits of the boundary-driven current, from the baths'
// effective occupations N_1, N_L:
//   ballistic (Gamma = 0):       J -> 2 gamma lambda^2 (N_L - N_1) / (4 lambda^2 + gamma^2)
//   diffusive (Gamma > 0):   J * L -> 2 lambda^2 (N_L - N_1) / Gamma
struct AsymptoticCurrent {
    double ballistic = 0.0;
    std::optional<double> diffusive_current_times_L; // empty when Gamma == 0
};

AsymptoticCurrent asymptotic_current(const ChainParams& p);

} // namespace nesskit
