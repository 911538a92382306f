// gaussian.hpp — Covariance matrices, symplectic spectra and entropy-based measures
//
// States are zero-mean Gaussian, so every information measure reduces to symplectic
// eigenvalues of (reduced) covariance matrices. The covariance matrix is kept in the
// interleaved ladder basis X = (a_1, a_1^dag, ..., a_L, a_L^dag):
//   Theta_{ij} = <{X_i, X_j^dag}>/2,
// whose mode-(i,j) 2x2 block is [[delta_ij/2 + C_ij, B_ij], [conj(B_ij), delta_ij/2 + C_ji]].
// Site indices in all public interfaces are 1-based.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nesskit/ness.hpp"

namespace nesskit {

using SiteSet = std::vector<int>; // 1-based site indices; order-insensitive, no duplicates

// Contiguous range {first, ..., last} (inclusive).
SiteSet site_range(int first, int last);

// Ordered list of disjoint site blocks. Only tripartitions A|B|C are consumed by the
// measures below: blocks must be contiguous and ordered along the chain, A and C
// non-empty; B may be empty (conditioning on nothing).
struct Partition {
    std::vector<SiteSet> blocks;
};

// A = {1..(L-b)/2}, B = the b middle sites, C = the mirror of A. Throws when L - b
// is odd (no symmetric split exists) or the outer blocks would be empty.
Partition symmetric_tripartition(int L, int b);

// {1..k-1} | {k} | {k+1..L} for 2 <= k <= L-1.
Partition site_tripartition(int L, int k);

void validate_tripartition(const Partition& p, int n_modes);

struct CovarianceMatrix {
    Eigen::MatrixXcd theta; // 2n x 2n, Hermitian
    int n_modes = 0;
};

// Build Theta from stationary moments (C Hermitian, B symmetric, checked to 1e-9).
CovarianceMatrix assemble_cm(const MomentMatrices& m);

// Keep both ladder rows/columns of each retained mode, in chain order.
CovarianceMatrix reduce_cm(const CovarianceMatrix& cm, const SiteSet& sites);

// Symplectic eigenvalues: the positive half of the spectrum of 2*Sigma*Theta with
// Sigma = diag(+1, -1, ...). Physical states have all nu >= 1; values in
// [1 - 1e-8, 1) are clamped to 1, anything lower throws SolverError, as do
// eigenvalue imaginary parts >= 1e-8 (they are discarded below that).
struct SymplecticSpectrum {
    std::vector<double> nu; // descending, one entry per mode
};

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm);

// S = sum_k [(nu+1)/2 ln((nu+1)/2) - (nu-1)/2 ln((nu-1)/2)], natural log; nu = 1
// contributes zero.
double von_neumann_entropy(const SymplecticSpectrum& spectrum);

// Entropy directly from the eigenvalues of an occupation block (nu = 2 c + 1,
// valid when the pair correlations vanish), with the same physicality clamp as
// symplectic_eigenvalues. Lets bulk scans that extract spectra themselves share
// the clamping and entropy rules.
double entropy_from_occupations(const Eigen::VectorXd& occupations);

// Entropy of the reduced state on `sites`. The CovarianceMatrix overload is the
// general route (reduce + 2*Sigma*Theta eigensolve). The MomentMatrices overload
// dispatches to an L x L Hermitian eigensolve (nu = 2c + 1) whenever B == 0 — the
// route all large sweeps take — and falls back to the general one otherwise.
double entropy_of_sites(const CovarianceMatrix& cm, const SiteSet& sites);
double entropy_of_sites(const MomentMatrices& m, const SiteSet& sites);

// I(A:B) = S(A) + S(B) - S(AB) >= 0. Tiny negatives (> -1e-10, pure roundoff) are
// clamped to zero; anything below throws SolverError.
double mutual_information(const CovarianceMatrix& cm, const SiteSet& a, const SiteSet& b);
double mutual_information(const MomentMatrices& m, const SiteSet& a, const SiteSet& b);

// T = sum_i S(site i) - S(chain), same clamping.
double total_correlations(const CovarianceMatrix& cm);
double total_correlations(const MomentMatrices& m);

// Standard tripartite mutual information S(A) + S(B) + S(C) - S(ABC) over a
// tripartition; may be legitimately negative, so it is returned unclamped.
double tripartite_mutual_information(const CovarianceMatrix& cm, const Partition& p);
double tripartite_mutual_information(const MomentMatrices& m, const Partition& p);

// I(A:C|B) = S(AB) + S(BC) - S(ABC) - S(B) >= 0 by strong subadditivity; clamped
// like the MI. With empty B this is exactly I(A:C).
double conditional_mutual_information(const CovarianceMatrix& cm, const Partition& p);
double conditional_mutual_information(const MomentMatrices& m, const Partition& p);

// Residual of the chain rule I(A:C|B) = I(AB:C) - I(B:C); with `reversed` the
// mirrored identity I(A:C|B) = I(A:BC) - I(A:B) is used instead.
double chain_rule_residual(const CovarianceMatrix& cm, const Partition& p, bool reversed = false);
double chain_rule_residual(const MomentMatrices& m, const Partition& p, bool reversed = false);

} // namespace nesskit
