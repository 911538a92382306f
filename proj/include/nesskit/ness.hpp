// ness.hpp — Steady-state and transient solvers for the chain's second moments
//
// Three independent routes to the nonequilibrium steady state (NESS):
//   * closed-form tridiagonal expressions (exact for any L, O(L) to build),
//   * one exact linear solve of the Kronecker-vectorized L^2 x L^2 system
//     (the self-consistent probe term is linear, so no iteration is needed),
//   * fixed-step RK4 integration of the transient equations of motion.
// A damped fixed-point iteration over the probe injections is kept as a fourth
// route; all of them must agree and the tests hold them to that.
#pragma once

#include <complex>

#include <Eigen/Dense>

#include "nesskit/chain.hpp"

namespace nesskit {

// Stationary second moments: C_{ij} = <a_j^dag a_i> (Hermitian, PSD) and
// B_{ij} = <a_i a_j> (symmetric; exactly zero without squeezing).
struct MomentMatrices {
    Eigen::MatrixXcd C;
    Eigen::MatrixXcd B;
};

// Closed-form NESS of the boundary-driven chain with self-consistent probes.
// C is tridiagonal: a uniform nearest-neighbour correlation
//   x = gamma*lambda*(N_L - N_1) / D,   D = 4 lambda^2 + gamma^2 + gamma*Gamma*(L-1),
// and occupations that interpolate linearly with end-point corrections,
//   <a_i^dag a_i> = (N_1+N_L)/2 + [gamma*(N_1-N_L)/(2D)] * Gamma*(L-2i+1)
//                   + [gamma^2*(N_1-N_L)/(2D)] * (delta_{i,1} - delta_{i,L}).
Eigen::MatrixXcd analytic_ness_c(const ChainParams& params);

// Same structure for the squeezing sector: since the stationary equation is linear
// in the injected noise, B is C's closed form with (N_1, N_L) -> (M_1, M_L).
Eigen::MatrixXcd analytic_ness_b(const ChainParams& params);

MomentMatrices analytic_ness(const ChainParams& params);

// Unique solution X of A X + X A^dag + Q = 0 via the vectorized linear system
// (I (x) A + conj(A) (x) I) vec(X) = -vec(Q). Throws SolverError when A is not
// Hurwitz (max Re eig >= -1e-12, the stationary state would not be unique) or
// when the residual exceeds 1e-10 * (|A||X| + |Q|). Intended for n <~ 64.
Eigen::MatrixXcd solve_lyapunov_dense(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q);

// NESS with the self-consistent probe term, from one exact vectorized solve of
//   W C + C W^dag + F_N - Gamma*offdiag(C) = 0   (and the analogue for B).
MomentMatrices solve_self_consistent(const ChainParams& params);

// Same fixed point reached by damped iteration: solve the plain Lyapunov equation
// with probe injections diag(Ntilde_i) taken from the previous iterate's diagonal,
// update Ntilde with damping 0.5, repeat until the diagonal is stationary to `tol`.
// Throws SolverError if `max_iter` iterations do not converge.
MomentMatrices solve_self_consistent_fixed_point(const ChainParams& params,
                                                 int max_iter = 500, double tol = 1e-12);

// Fixed-step RK4 integration of dX/dt = A X + X A^dag + Q - Gamma*offdiag(X)
// from X0 to t_final (full steps of dt plus one shortened final step).
Eigen::MatrixXcd integrate_lyapunov(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q,
                                    double Gamma, Eigen::MatrixXcd X0,
                                    double t_final, double dt);

// Transient of the full chain: integrates C and B from the given initial data.
MomentMatrices evolve_transient(const ChainParams& params, const Eigen::MatrixXcd& C0,
                                const Eigen::MatrixXcd& B0, double t_final, double dt);

// Max-abs residual of the stationary equation evaluated on a candidate X.
double stationary_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q,
                           double Gamma, const Eigen::MatrixXcd& X);

} // namespace nesskit
