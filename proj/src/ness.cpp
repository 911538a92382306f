// ness.cpp — Steady-state and transient solvers
#include "nesskit/ness.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "nesskit/errors.hpp"

namespace nesskit {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Shared skeleton of the closed-form steady state: tridiagonal matrix with
// uniform off-diagonal x and linearly interpolating diagonal between the two
// boundary injections (f1, fL), with end-point corrections. Exact zeros are
// written everywhere else so downstream code can rely on the sparsity pattern.
Matrix closed_form_tridiagonal(const ChainParams& p, std::complex<double> f1,
                               std::complex<double> fL) {
    const int L = p.L;
    const double g = p.gamma, l = p.lambda;
    const double denom = 4.0 * l * l + g * g + g * p.Gamma * (L - 1);
    const std::complex<double> x = g * l * (fL - f1) / denom;
    const std::complex<double> grad = g * (f1 - fL) / (2.0 * denom);

    Matrix out = Matrix::Zero(L, L);
    for (int i = 1; i <= L; ++i) {
        std::complex<double> d = 0.5 * (f1 + fL) + grad * p.Gamma * double(L - 2 * i + 1);
        if (i == 1) d += grad * g;
        if (i == L) d -= grad * g;
        out(i - 1, i - 1) = d;
    }
    for (int i = 0; i + 1 < L; ++i) {
        out(i, i + 1) = x;
        out(i + 1, i) = x;
    }
    return out;
}

void check_square_pair(const Matrix& A, const Matrix& Q, const char* where) {
    if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
        throw std::invalid_argument(fmt::format(
            "{}: A and Q must be square matrices of equal size (got {}x{} and {}x{})",
            where, A.rows(), A.cols(), Q.rows(), Q.cols()));
    if (!A.allFinite() || !Q.allFinite())
        throw std::invalid_argument(fmt::format("{}: matrix entries must be finite", where));
}

void check_hurwitz(const Matrix& A) {
    Eigen::ComplexEigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    const double max_re = es.eigenvalues().real().maxCoeff();
    if (max_re >= -1e-12)
        throw SolverError(fmt::format(
            "drift matrix is not Hurwitz (max Re eigenvalue = {:.3e}); "
            "the stationary state is not unique", max_re));
}

// vec(X) with column-major stacking, matching (I (x) A) vec(X) = vec(A X).
Vector vec(const Matrix& X) {
    return Eigen::Map<const Vector>(X.data(), X.size());
}

Matrix unvec(const Vector& v, Eigen::Index n) {
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

// Solve (I (x) A + conj(A) (x) I - Gamma * P_offdiag) vec(X) = -vec(Q).
Matrix vectorized_stationary_solve(const Matrix& A, const Matrix& Q, double Gamma) {
    const Eigen::Index n = A.rows();
    Matrix K = Eigen::kroneckerProduct(Matrix::Identity(n, n), A).eval() +
               Eigen::kroneckerProduct(A.conjugate(), Matrix::Identity(n, n)).eval();
    if (Gamma != 0.0) {
        K.diagonal().array() -= Gamma;
        for (Eigen::Index c = 0; c < n; ++c) {
            const Eigen::Index j = c * n + c; // vec index of the (c, c) entry
            K(j, j) += Gamma;
        }
    }
    Eigen::PartialPivLU<Matrix> lu(K);
    const Matrix X = unvec(lu.solve(-vec(Q)), n);

    const double res = stationary_residual(A, Q, Gamma, X);
    const double scale = A.cwiseAbs().maxCoeff() * X.cwiseAbs().maxCoeff() +
                         Q.cwiseAbs().maxCoeff();
    if (!(res <= 1e-10 * std::max(scale, 1.0)))
        throw SolverError(fmt::format(
            "stationary solve left residual {:.3e} (scale {:.3e}); system is ill-conditioned",
            res, scale));
    return X;
}

Matrix offdiag(const Matrix& X) {
    Matrix out = X;
    out.diagonal().setZero();
    return out;
}

} // namespace

Eigen::MatrixXcd analytic_ness_c(const ChainParams& params) {
    validate(params);
    const BathMoments left = squeezing_to_moments(params.left);
    const BathMoments right = squeezing_to_moments(params.right);
    return closed_form_tridiagonal(params, left.N, right.N);
}

Eigen::MatrixXcd analytic_ness_b(const ChainParams& params) {
    validate(params);
    const BathMoments left = squeezing_to_moments(params.left);
    const BathMoments right = squeezing_to_moments(params.right);
    if (left.M == std::complex<double>(0.0, 0.0) && right.M == std::complex<double>(0.0, 0.0))
        return Matrix::Zero(params.L, params.L);
    return closed_form_tridiagonal(params, left.M, right.M);
}

MomentMatrices analytic_ness(const ChainParams& params) {
    return {analytic_ness_c(params), analytic_ness_b(params)};
}

Eigen::MatrixXcd solve_lyapunov_dense(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q) {
    check_square_pair(A, Q, "solve_lyapunov_dense");
    check_hurwitz(A);
    return vectorized_stationary_solve(A, Q, 0.0);
}

MomentMatrices solve_self_consistent(const ChainParams& params) {
    const DriftNoise dn = build_drift_noise(params);
    check_hurwitz(dn.W);
    MomentMatrices out;
    out.C = vectorized_stationary_solve(dn.W, dn.F_N.cast<std::complex<double>>(), params.Gamma);
    if (dn.F_M.isZero(0.0))
        out.B = Matrix::Zero(params.L, params.L);
    else
        out.B = vectorized_stationary_solve(dn.W, dn.F_M, params.Gamma);
    return out;
}

MomentMatrices solve_self_consistent_fixed_point(const ChainParams& params,
                                                 int max_iter, double tol) {
    if (max_iter < 1 || !(tol > 0.0))
        throw std::invalid_argument("solve_self_consistent_fixed_point: need max_iter >= 1 and tol > 0");
    const DriftNoise dn = build_drift_noise(params);
    const int L = params.L;
    // Damping from the probes moves into the drift; their injections are iterated.
    const Matrix W_damped = dn.W - 0.5 * params.Gamma * Matrix::Identity(L, L);

    const auto iterate = [&](const Matrix& F) {
        Vector inject = Vector::Zero(L);
        Matrix X;
        for (int it = 0; it < max_iter; ++it) {
            Matrix Q = F;
            Q.diagonal() += params.Gamma * inject;
            X = solve_lyapunov_dense(W_damped, Q);
            const Vector diag = X.diagonal();
            if ((diag - inject).cwiseAbs().maxCoeff() < tol) return X;
            inject = 0.5 * inject + 0.5 * diag;
        }
        throw SolverError(fmt::format(
            "self-consistent fixed point did not reach tol {:.1e} within {} iterations", tol, max_iter));
    };

    MomentMatrices out;
    out.C = iterate(dn.F_N.cast<std::complex<double>>());
    if (dn.F_M.isZero(0.0))
        out.B = Matrix::Zero(L, L);
    else
        out.B = iterate(dn.F_M);
    return out;
}

Eigen::MatrixXcd integrate_lyapunov(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q,
                                    double Gamma, Eigen::MatrixXcd X0,
                                    double t_final, double dt) {
    check_square_pair(A, Q, "integrate_lyapunov");
    if (X0.rows() != A.rows() || X0.cols() != A.cols())
        throw std::invalid_argument("integrate_lyapunov: X0 must match A in shape");
    if (!X0.allFinite())
        throw std::invalid_argument("integrate_lyapunov: X0 entries must be finite");
    if (!(dt > 0.0) || !(t_final >= 0.0) || !std::isfinite(dt) || !std::isfinite(t_final))
        throw std::invalid_argument(fmt::format(
            "integrate_lyapunov: need dt > 0 and t_final >= 0, got dt={}, t_final={}", dt, t_final));

    const auto rhs = [&](const Matrix& X) -> Matrix {
        Matrix r = A * X + X * A.adjoint() + Q;
        if (Gamma != 0.0) r -= Gamma * offdiag(X);
        return r;
    };

    const auto rk4_step = [&](Matrix& X, double h) {
        const Matrix k1 = rhs(X);
        const Matrix k2 = rhs(X + 0.5 * h * k1);
        const Matrix k3 = rhs(X + 0.5 * h * k2);
        const Matrix k4 = rhs(X + h * k3);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    const auto n_full = static_cast<long long>(std::floor(t_final / dt));
    for (long long s = 0; s < n_full; ++s) rk4_step(X0, dt);
    const double rest = t_final - double(n_full) * dt;
    if (rest > 0.0) rk4_step(X0, rest);
    if (!X0.allFinite())
        throw SolverError("integrate_lyapunov: integration diverged (dt too large for this spectrum)");
    return X0;
}

MomentMatrices evolve_transient(const ChainParams& params, const Eigen::MatrixXcd& C0,
                                const Eigen::MatrixXcd& B0, double t_final, double dt) {
    const DriftNoise dn = build_drift_noise(params);
    MomentMatrices out;
    out.C = integrate_lyapunov(dn.W, dn.F_N.cast<std::complex<double>>(), params.Gamma, C0, t_final, dt);
    out.B = integrate_lyapunov(dn.W, dn.F_M, params.Gamma, B0, t_final, dt);
    return out;
}

double stationary_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q,
                           double Gamma, const Eigen::MatrixXcd& X) {
    Matrix r = A * X + X * A.adjoint() + Q;
    if (Gamma != 0.0) r -= Gamma * offdiag(X);
    return r.cwiseAbs().maxCoeff();
}

} // namespace nesskit
