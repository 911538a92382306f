// scaling.hpp — least-squares fits for decay laws and the CMI scaling form
#pragma once

#include <vector>

namespace nesskit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals; // y_i - (intercept + slope x_i)
};

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

// Fit of ln y against ln x; slope is the power-law exponent. All inputs must be
// strictly positive.
LinearFit log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CmiSample {
    double Gamma = 0.0;
    int L = 0;
    double cmi = 0.0;
};

// Fit of I = u / (v + Gamma L)^(2b+2). Linearized exactly: y = I^(-1/(2b+2)) is
// a straight line in x = Gamma L with slope u^(-1/(2b+2)) and intercept
// v u^(-1/(2b+2)), so one linear fit recovers both parameters.
struct ScalingFit {
    double u = 0.0;
    double v = 0.0;
    double exponent = 0.0;  // the decay power 2b+2
    double r_squared = 0.0; // of the linearized fit
    std::vector<double> residuals;
};

ScalingFit fit_cmi_scaling(const std::vector<CmiSample>& samples, int b);

} // namespace nesskit
