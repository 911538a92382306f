// chain.hpp — Parameters of the boundary-driven bosonic chain and its drift/noise matrices
//
// The model is a chain of L bosonic modes with nearest-neighbour exchange coupling
// lambda, boundary thermal (optionally squeezed) baths attached to sites 1 and L at
// rate gamma, and self-consistent reservoirs ("Buttiker probes") attached to every
// site at rate Gamma. All site indices exposed here are 1-based.
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace nesskit {

// A local squeezed thermal bath: mean occupation nbar, squeezing magnitude r and
// squeezing phase theta. r = 0 is a plain thermal bath.
struct BathSpec {
    double nbar = 0.0;  // mean thermal occupation, >= 0
    double r = 0.0;     // squeezing magnitude, >= 0
    double theta = 0.0; // squeezing phase, in [0, 2*pi)
};

// Second moments a squeezed thermal bath imprints on its contact mode:
//   N + 1/2 = (nbar + 1/2) cosh(2r),   M = (nbar + 1/2) e^{i theta} sinh(2r).
// These always satisfy N >= nbar and |M|^2 = N(N+1) - nbar(nbar+1) <= N(N+1).
struct BathMoments {
    double N = 0.0;
    std::complex<double> M{0.0, 0.0};
};

struct ChainParams {
    int L = 2;            // number of sites, >= 2
    double omega = 0.0;   // on-site frequency, >= 0 (steady state does not depend on it)
    double lambda = 1.0;  // exchange coupling
    double gamma = 1.0;   // boundary-bath coupling rate, > 0
    double Gamma = 0.0;   // self-consistent reservoir rate, >= 0
    BathSpec left{};      // bath on site 1
    BathSpec right{};     // bath on site L
};

// Throw std::invalid_argument when a field is outside its domain.
void validate(const BathSpec& bath);
void validate(const ChainParams& params);

// Map (nbar, r, theta) to the bath moments (N, M). Validates the bath.
BathMoments squeezing_to_moments(const BathSpec& bath);

// Drift matrix and noise matrices of the second-moment equations of motion,
//   dC/dt = W C + C W^dag + F_N - Gamma * offdiag(C)
//   dB/dt = W B + B W^dag + F_M - Gamma * offdiag(B)
// where C_{ij} = <a_j^dag a_i>, B_{ij} = <a_i a_j>. W is tridiagonal:
// W[i][i] = i*omega - gamma_i/2 with gamma_i = gamma only on sites 1 and L,
// W[i][i+1] = +lambda, W[i+1][i] = -lambda. F_N = gamma diag(N_1, 0, ..., 0, N_L)
// and F_M = gamma diag(M_1, 0, ..., 0, M_L) carry the boundary injections only;
// the probe terms enter through the offdiag projector, not through W or F.
struct DriftNoise {
    Eigen::MatrixXcd W;
    Eigen::MatrixXd F_N;
    Eigen::MatrixXcd F_M;
};

DriftNoise build_drift_noise(const ChainParams& params);

} // namespace nesskit
