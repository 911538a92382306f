// chain.cpp — Parameter validation and drift/noise assembly
#include "nesskit/chain.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <stdexcept>

namespace nesskit {

void validate(const BathSpec& bath) {
    if (!std::isfinite(bath.nbar) || bath.nbar < 0.0)
        throw std::invalid_argument(fmt::format("bath nbar must be finite and >= 0, got {}", bath.nbar));
    if (!std::isfinite(bath.r) || bath.r < 0.0)
        throw std::invalid_argument(fmt::format("bath squeezing r must be finite and >= 0, got {}", bath.r));
    if (!std::isfinite(bath.theta) || bath.theta < 0.0 || bath.theta >= 2.0 * std::numbers::pi)
        throw std::invalid_argument(fmt::format("bath phase theta must lie in [0, 2*pi), got {}", bath.theta));
}

void validate(const ChainParams& params) {
    if (params.L < 2)
        throw std::invalid_argument(fmt::format("chain length L must be >= 2, got {}", params.L));
    if (!std::isfinite(params.omega) || params.omega < 0.0)
        throw std::invalid_argument(fmt::format("omega must be finite and >= 0, got {}", params.omega));
    if (!std::isfinite(params.lambda))
        throw std::invalid_argument("lambda must be finite");
    if (!std::isfinite(params.gamma) || params.gamma <= 0.0)
        throw std::invalid_argument(fmt::format("gamma must be finite and > 0, got {}", params.gamma));
    if (!std::isfinite(params.Gamma) || params.Gamma < 0.0)
        throw std::invalid_argument(fmt::format("Gamma must be finite and >= 0, got {}", params.Gamma));
    validate(params.left);
    validate(params.right);
}

BathMoments squeezing_to_moments(const BathSpec& bath) {
    validate(bath);
    const double scale = bath.nbar + 0.5;
    BathMoments out;
    out.N = scale * std::cosh(2.0 * bath.r) - 0.5;
    out.M = scale * std::sinh(2.0 * bath.r) *
            std::complex<double>(std::cos(bath.theta), std::sin(bath.theta));
    return out;
}

DriftNoise build_drift_noise(const ChainParams& params) {
    validate(params);
    const int L = params.L;
    const std::complex<double> iw(0.0, params.omega);

    DriftNoise dn;
    dn.W = Eigen::MatrixXcd::Zero(L, L);
    dn.F_N = Eigen::MatrixXd::Zero(L, L);
    dn.F_M = Eigen::MatrixXcd::Zero(L, L);

    for (int i = 0; i < L; ++i) dn.W(i, i) = iw;
    dn.W(0, 0) -= params.gamma / 2.0;
    dn.W(L - 1, L - 1) -= params.gamma / 2.0;
    for (int i = 0; i + 1 < L; ++i) {
        dn.W(i, i + 1) = params.lambda;
        dn.W(i + 1, i) = -params.lambda;
    }

    const BathMoments left = squeezing_to_moments(params.left);
    const BathMoments right = squeezing_to_moments(params.right);
    dn.F_N(0, 0) = params.gamma * left.N;
    dn.F_N(L - 1, L - 1) = params.gamma * right.N;
    dn.F_M(0, 0) = params.gamma * left.M;
    dn.F_M(L - 1, L - 1) = params.gamma * right.M;
    return dn;
}

} // namespace nesskit
