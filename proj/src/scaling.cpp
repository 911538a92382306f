// scaling.cpp — least-squares fitting
#include "nesskit/scaling.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

#include "nesskit/errors.hpp"

namespace nesskit {

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (y.size() != n)
        throw std::invalid_argument("x and y must have the same length");
    if (n < 2)
        throw std::invalid_argument("a linear fit needs at least 2 points");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("x values are all identical");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.resize(n);
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += fit.residuals[i] * fit.residuals[i];
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

LinearFit log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("x and y must have the same length");
    std::vector<double> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument(fmt::format(
                "log-log fit needs strictly positive data, got ({:.17g}, {:.17g})",
                x[i], y[i]));
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_linear(lx, ly);
}

ScalingFit fit_cmi_scaling(const std::vector<CmiSample>& samples, int b) {
    if (b < 0)
        throw std::invalid_argument("middle block size b must be nonnegative");
    if (samples.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 samples");

    const double p = 2.0 * b + 2.0;
    std::vector<double> x(samples.size()), y(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].cmi > 0.0))
            throw std::invalid_argument(fmt::format(
                "scaling fit needs strictly positive CMI values, got {:.17g} at "
                "Gamma = {:.17g}, L = {}",
                samples[i].cmi, samples[i].Gamma, samples[i].L));
        x[i] = samples[i].Gamma * samples[i].L;
        y[i] = std::pow(samples[i].cmi, -1.0 / p);
    }

    const LinearFit lin = fit_linear(x, y);
    if (!(lin.slope > 0.0))
        throw SolverError(fmt::format(
            "linearized scaling fit has non-positive slope {:.17g}: data do not "
            "follow a decaying power of Gamma L",
            lin.slope));

    ScalingFit fit;
    fit.exponent = p;
    fit.u = std::pow(lin.slope, -p);
    fit.v = lin.intercept / lin.slope;
    fit.r_squared = lin.r_squared;
    fit.residuals = lin.residuals;
    return fit;
}

} // namespace nesskit
