// scaling_test.cpp — linear fits and the CMI scaling-law fit
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nesskit/errors.hpp"
#include "nesskit/scaling.hpp"

using namespace nesskit;

TEST_CASE("linear fit recovers an exact line") {
    const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
    const LinearFit fit = fit_linear(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-14));
    for (double r : fit.residuals)
        CHECK(std::abs(r) < 1e-13);
}

TEST_CASE("linear fit input validation") {
    CHECK_THROWS_AS(fit_linear({1.0}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_linear({1.0, 2.0}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_linear({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("log-log slope of a pure power law") {
    std::vector<double> x, y;
    for (int i = 1; i <= 6; ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(5.0 * std::pow(static_cast<double>(i), -3.0));
    }
    const LinearFit fit = log_log_slope(x, y);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log_log_slope({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_log_slope({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("scaling fit recovers synthetic (u, v) exactly") {
    // I = u / (v + Gamma L)^(2b+2) with u = 1, v = 2, b = 1.
    std::vector<CmiSample> samples;
    for (int L : {10, 20, 40, 80, 160}) {
        const double gl = 0.1 * L;
        samples.push_back({0.1, L, 1.0 / std::pow(2.0 + gl, 4.0)});
    }
    const ScalingFit fit = fit_cmi_scaling(samples, 1);
    CHECK(fit.exponent == doctest::Approx(4.0));
    CHECK(fit.u == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fit.v == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scaling fit input validation") {
    std::vector<CmiSample> two = {{0.1, 10, 0.5}, {0.1, 20, 0.3}};
    CHECK_THROWS_AS(fit_cmi_scaling(two, 1), std::invalid_argument);

    std::vector<CmiSample> with_zero = {{0.1, 10, 0.5}, {0.1, 20, 0.0}, {0.1, 40, 0.1}};
    CHECK_THROWS_AS(fit_cmi_scaling(with_zero, 1), std::invalid_argument);

    std::vector<CmiSample> ok = {{0.1, 10, 0.5}, {0.1, 20, 0.3}, {0.1, 40, 0.1}};
    CHECK_THROWS_AS(fit_cmi_scaling(ok, -1), std::invalid_argument);

    // CMI growing with Gamma L cannot come from a decaying power law.
    std::vector<CmiSample> rising = {{0.1, 10, 0.1}, {0.1, 20, 0.3}, {0.1, 40, 0.9}};
    CHECK_THROWS_AS(fit_cmi_scaling(rising, 1), SolverError);
}
