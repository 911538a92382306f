// gaussian.cpp — symplectic spectra and Gaussian entropy measures
#include "nesskit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nesskit/errors.hpp"

namespace nesskit {

namespace {

constexpr double kNuClamp = 1e-8;       // nu in [1 - kNuClamp, 1) counts as pure
constexpr double kImagTol = 1e-8;       // discard eigenvalue imaginary parts below this
constexpr double kMeasureFloor = -1e-10; // most negative roundoff tolerated in MI/TC/CMI

SiteSet canonical_sites(const SiteSet& sites, int n_modes) {
    if (sites.empty())
        throw std::invalid_argument("site set is empty");
    SiteSet s = sites;
    std::sort(s.begin(), s.end());
    if (s.front() < 1 || s.back() > n_modes)
        throw std::invalid_argument(
            fmt::format("site index out of range: sites must lie in [1, {}]", n_modes));
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("site set contains duplicates");
    return s;
}

void check_disjoint(const SiteSet& a, const SiteSet& b) {
    for (int s : a)
        if (std::binary_search(b.begin(), b.end(), s))
            throw std::invalid_argument(fmt::format("site sets overlap at site {}", s));
}

SiteSet merged(const SiteSet& a, const SiteSet& b) {
    SiteSet out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_contiguous(const SiteSet& sorted) {
    return sorted.empty() ||
           sorted.back() - sorted.front() + 1 == static_cast<int>(sorted.size());
}

// Clamp one candidate symplectic eigenvalue to the physical domain nu >= 1.
double clamp_nu(double nu) {
    if (nu < 1.0 - kNuClamp)
        throw SolverError(fmt::format(
            "unphysical state: symplectic eigenvalue {:.17g} below 1 - 1e-8", nu));
    return std::max(nu, 1.0);
}

double g_entropy(double nu) {
    if (nu <= 1.0)
        return 0.0;
    const double up = 0.5 * (nu + 1.0);
    const double dn = 0.5 * (nu - 1.0);
    return up * std::log(up) - dn * std::log(dn);
}

// Nonnegativity clamp shared by MI, TC and CMI: tiny negatives are roundoff,
// anything beyond the floor means the state or the reduction was invalid.
double clamp_measure(double raw, const char* what) {
    if (raw < kMeasureFloor)
        throw SolverError(fmt::format("{} = {:.17g} fell below -1e-10", what, raw));
    return std::max(raw, 0.0);
}

// Entropy from an L x L occupation block alone (valid only when B == 0, where
// nu_k = 2 c_k + 1 for c_k the eigenvalues of the reduced C). Uses the O(n^2)
// tridiagonal eigensolver when the reduction is exactly real tridiagonal — the
// shape every closed-form chain state reduces to on contiguous site sets.
double entropy_from_occupation(const Eigen::MatrixXcd& c_red) {
    const Eigen::Index n = c_red.rows();
    bool real_tridiag = true;
    for (Eigen::Index j = 0; j < n && real_tridiag; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::complex<double> v = c_red(i, j);
            if (v.imag() != 0.0 || (std::abs(i - j) > 1 && v.real() != 0.0)) {
                real_tridiag = false;
                break;
            }
        }

    Eigen::VectorXd occ;
    if (real_tridiag) {
        Eigen::VectorXd diag(n), sub(n > 0 ? n - 1 : 0);
        for (Eigen::Index i = 0; i < n; ++i)
            diag(i) = c_red(i, i).real();
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            sub(i) = c_red(i + 1, i).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw SolverError("tridiagonal eigensolve failed");
        occ = es.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c_red, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw SolverError("Hermitian eigensolve failed");
        occ = es.eigenvalues();
    }

    return entropy_from_occupations(occ);
}

Eigen::MatrixXcd reduce_square(const Eigen::MatrixXcd& m, const SiteSet& sorted) {
    const Eigen::Index n = static_cast<Eigen::Index>(sorted.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, j) = m(sorted[i] - 1, sorted[j] - 1);
    return out;
}

// Entropy with the set already canonical and non-empty.
double subset_entropy(const CovarianceMatrix& cm, const SiteSet& sorted) {
    return von_neumann_entropy(symplectic_eigenvalues(reduce_cm(cm, sorted)));
}

double subset_entropy(const MomentMatrices& m, const SiteSet& sorted) {
    if (m.B.isZero(0.0))
        return entropy_from_occupation(reduce_square(m.C, sorted));
    MomentMatrices red{reduce_square(m.C, sorted), reduce_square(m.B, sorted)};
    return von_neumann_entropy(symplectic_eigenvalues(assemble_cm(red)));
}

int mode_count(const CovarianceMatrix& cm) { return cm.n_modes; }
int mode_count(const MomentMatrices& m) { return static_cast<int>(m.C.rows()); }

template <class State>
double entropy_or_zero(const State& state, const SiteSet& sites) {
    if (sites.empty())
        return 0.0;
    return subset_entropy(state, canonical_sites(sites, mode_count(state)));
}

template <class State>
double mi_impl(const State& state, const SiteSet& a, const SiteSet& b) {
    const int n = mode_count(state);
    const SiteSet sa = canonical_sites(a, n);
    const SiteSet sb = canonical_sites(b, n);
    check_disjoint(sa, sb);
    const double raw = subset_entropy(state, sa) + subset_entropy(state, sb) -
                       subset_entropy(state, merged(sa, sb));
    return clamp_measure(raw, "mutual information");
}

template <class State>
double tc_impl(const State& state) {
    const int n = mode_count(state);
    double singles = 0.0;
    for (int s = 1; s <= n; ++s)
        singles += subset_entropy(state, SiteSet{s});
    const double raw = singles - subset_entropy(state, site_range(1, n));
    return clamp_measure(raw, "total correlations");
}

template <class State>
double tripartite_impl(const State& state, const Partition& p) {
    validate_tripartition(p, mode_count(state));
    const SiteSet all = merged(merged(p.blocks[0], p.blocks[1]), p.blocks[2]);
    return entropy_or_zero(state, p.blocks[0]) + entropy_or_zero(state, p.blocks[1]) +
           entropy_or_zero(state, p.blocks[2]) - entropy_or_zero(state, all);
}

template <class State>
double cmi_impl(const State& state, const Partition& p) {
    validate_tripartition(p, mode_count(state));
    const SiteSet& a = p.blocks[0];
    const SiteSet& b = p.blocks[1];
    const SiteSet& c = p.blocks[2];
    const double raw = entropy_or_zero(state, merged(a, b)) +
                       entropy_or_zero(state, merged(b, c)) -
                       entropy_or_zero(state, merged(merged(a, b), c)) -
                       entropy_or_zero(state, b);
    return clamp_measure(raw, "conditional mutual information");
}

template <class State>
double chain_rule_impl(const State& state, const Partition& p, bool reversed) {
    validate_tripartition(p, mode_count(state));
    const SiteSet& a = p.blocks[0];
    const SiteSet& b = p.blocks[1];
    const SiteSet& c = p.blocks[2];
    const double cmi = cmi_impl(state, p);
    double decomposed;
    if (b.empty()) {
        decomposed = mi_impl(state, a, c); // both identities collapse to I(A:C)
    } else if (reversed) {
        decomposed = mi_impl(state, a, merged(b, c)) - mi_impl(state, a, b);
    } else {
        decomposed = mi_impl(state, merged(a, b), c) - mi_impl(state, b, c);
    }
    return cmi - decomposed;
}

} // namespace

SiteSet site_range(int first, int last) {
    if (first < 1 || last < first)
        throw std::invalid_argument(
            fmt::format("invalid site range [{}, {}]", first, last));
    SiteSet s(static_cast<size_t>(last - first + 1));
    std::iota(s.begin(), s.end(), first);
    return s;
}

Partition symmetric_tripartition(int L, int b) {
    if (L < 2)
        throw std::invalid_argument("chain length must be at least 2");
    if (b < 0 || b > L - 2)
        throw std::invalid_argument(
            fmt::format("middle block size b = {} must lie in [0, L-2] for L = {}", b, L));
    if ((L - b) % 2 != 0)
        throw std::invalid_argument(fmt::format(
            "L - b = {} is odd: no symmetric tripartition of {} sites around a "
            "{}-site middle block exists",
            L - b, L, b));
    const int half = (L - b) / 2;
    Partition p;
    p.blocks.push_back(site_range(1, half));
    p.blocks.push_back(b > 0 ? site_range(half + 1, half + b) : SiteSet{});
    p.blocks.push_back(site_range(half + b + 1, L));
    return p;
}

Partition site_tripartition(int L, int k) {
    if (k < 2 || k > L - 1)
        throw std::invalid_argument(
            fmt::format("conditioning site k = {} must lie in [2, L-1] for L = {}", k, L));
    return Partition{{site_range(1, k - 1), SiteSet{k}, site_range(k + 1, L)}};
}

void validate_tripartition(const Partition& p, int n_modes) {
    if (p.blocks.size() != 3)
        throw std::invalid_argument(
            fmt::format("expected 3 blocks, got {}", p.blocks.size()));
    if (p.blocks[0].empty() || p.blocks[2].empty())
        throw std::invalid_argument("outer blocks of a tripartition must be non-empty");
    SiteSet prev;
    for (const SiteSet& raw : p.blocks) {
        if (raw.empty())
            continue;
        SiteSet s = canonical_sites(raw, n_modes);
        if (!is_contiguous(s))
            throw std::invalid_argument("tripartition blocks must be contiguous");
        if (!prev.empty() && s.front() <= prev.back())
            throw std::invalid_argument(
                "tripartition blocks must be disjoint and ordered along the chain");
        prev = std::move(s);
    }
}

CovarianceMatrix assemble_cm(const MomentMatrices& m) {
    const Eigen::Index L = m.C.rows();
    if (m.C.cols() != L || m.B.rows() != L || m.B.cols() != L)
        throw std::invalid_argument("moment matrices must be square and equally sized");
    const double scale = std::max({1.0, m.C.cwiseAbs().maxCoeff(), m.B.cwiseAbs().maxCoeff()});
    if (!(m.C - m.C.adjoint()).isZero(1e-9 * scale))
        throw std::invalid_argument("occupation matrix is not Hermitian");
    if (!(m.B - m.B.transpose()).isZero(1e-9 * scale))
        throw std::invalid_argument("pair-correlation matrix is not symmetric");

    CovarianceMatrix cm;
    cm.n_modes = static_cast<int>(L);
    cm.theta.setZero(2 * L, 2 * L);
    for (Eigen::Index j = 0; j < L; ++j)
        for (Eigen::Index i = 0; i < L; ++i) {
            const double half = i == j ? 0.5 : 0.0;
            cm.theta(2 * i, 2 * j) = half + m.C(i, j);
            cm.theta(2 * i, 2 * j + 1) = m.B(i, j);
            cm.theta(2 * i + 1, 2 * j) = std::conj(m.B(i, j));
            cm.theta(2 * i + 1, 2 * j + 1) = half + m.C(j, i);
        }
    return cm;
}

CovarianceMatrix reduce_cm(const CovarianceMatrix& cm, const SiteSet& sites) {
    if (cm.theta.rows() != 2 * cm.n_modes || cm.theta.cols() != 2 * cm.n_modes)
        throw std::invalid_argument("covariance matrix shape does not match mode count");
    const SiteSet s = canonical_sites(sites, cm.n_modes);
    const Eigen::Index n = static_cast<Eigen::Index>(s.size());
    CovarianceMatrix out;
    out.n_modes = static_cast<int>(n);
    out.theta.resize(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            out.theta.block<2, 2>(2 * i, 2 * j) =
                cm.theta.block<2, 2>(2 * (s[i] - 1), 2 * (s[j] - 1));
    return out;
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm) {
    const Eigen::Index n = cm.n_modes;
    if (cm.theta.rows() != 2 * n || cm.theta.cols() != 2 * n)
        throw std::invalid_argument("covariance matrix shape does not match mode count");

    Eigen::VectorXcd sigma(2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i)
        sigma(i) = (i % 2 == 0) ? 1.0 : -1.0;
    const Eigen::MatrixXcd form = 2.0 * sigma.asDiagonal() * cm.theta;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(form, false);
    if (es.info() != Eigen::Success)
        throw SolverError("eigensolve of the symplectic form failed");

    SymplecticSpectrum spec;
    spec.nu.reserve(static_cast<size_t>(n));
    for (Eigen::Index k = 0; k < 2 * n; ++k) {
        const std::complex<double> ev = es.eigenvalues()(k);
        if (std::abs(ev.imag()) >= kImagTol)
            throw SolverError(fmt::format(
                "symplectic spectrum is not real: eigenvalue {:.17g}{:+.17g}i",
                ev.real(), ev.imag()));
        if (ev.real() > 0.0)
            spec.nu.push_back(ev.real());
    }
    if (spec.nu.size() != static_cast<size_t>(n))
        throw SolverError(fmt::format(
            "expected {} positive symplectic eigenvalues, found {}", n, spec.nu.size()));
    for (double& nu : spec.nu)
        nu = clamp_nu(nu);
    std::sort(spec.nu.begin(), spec.nu.end(), std::greater<>());
    return spec;
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
    double s = 0.0;
    for (double nu : spectrum.nu) {
        if (nu < 1.0)
            throw std::invalid_argument(
                fmt::format("symplectic eigenvalue {:.17g} below 1", nu));
        s += g_entropy(nu);
    }
    return s;
}

double entropy_from_occupations(const Eigen::VectorXd& occupations) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < occupations.size(); ++k)
        s += g_entropy(clamp_nu(2.0 * occupations(k) + 1.0));
    return s;
}

double entropy_of_sites(const CovarianceMatrix& cm, const SiteSet& sites) {
    return subset_entropy(cm, canonical_sites(sites, cm.n_modes));
}

double entropy_of_sites(const MomentMatrices& m, const SiteSet& sites) {
    return subset_entropy(m, canonical_sites(sites, mode_count(m)));
}

double mutual_information(const CovarianceMatrix& cm, const SiteSet& a, const SiteSet& b) {
    return mi_impl(cm, a, b);
}

double mutual_information(const MomentMatrices& m, const SiteSet& a, const SiteSet& b) {
    return mi_impl(m, a, b);
}

double total_correlations(const CovarianceMatrix& cm) { return tc_impl(cm); }

double total_correlations(const MomentMatrices& m) { return tc_impl(m); }

double tripartite_mutual_information(const CovarianceMatrix& cm, const Partition& p) {
    return tripartite_impl(cm, p);
}

double tripartite_mutual_information(const MomentMatrices& m, const Partition& p) {
    return tripartite_impl(m, p);
}

double conditional_mutual_information(const CovarianceMatrix& cm, const Partition& p) {
    return cmi_impl(cm, p);
}

double conditional_mutual_information(const MomentMatrices& m, const Partition& p) {
    return cmi_impl(m, p);
}

double chain_rule_residual(const CovarianceMatrix& cm, const Partition& p, bool reversed) {
    return chain_rule_impl(cm, p, reversed);
}

double chain_rule_residual(const MomentMatrices& m, const Partition& p, bool reversed) {
    return chain_rule_impl(m, p, reversed);
}

} // namespace nesskit
