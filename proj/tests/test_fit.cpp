#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "critjac/fit.hpp"

using namespace critjac;

TEST_CASE("ols_fit recovers an exact line") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 * 0.1 * i - 2.0);
    }
    auto f = ols_fit(x, y);
    CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ols_fit rejects degenerate inputs") {
    CHECK_THROWS_AS(ols_fit({1.0}, {2.0}), InsufficientData);
    CHECK_THROWS_AS(ols_fit({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), InsufficientData);
}

TEST_CASE("geometric_indices spans the window with distinct sorted samples") {
    auto g = geometric_indices(1, 100, 10.0);
    CHECK(g == std::vector<long>{1, 10, 100});

    auto h = geometric_indices(100, 100000, 1.1);
    CHECK(h.front() == 100);
    CHECK(h.back() == 100000);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);

    CHECK(geometric_indices(5, 5, 2.0) == std::vector<long>{5});
    CHECK_THROWS_AS(geometric_indices(10, 5, 2.0), DomainError);
    CHECK_THROWS_AS(geometric_indices(0, 5, 2.0), DomainError);
    CHECK_THROWS_AS(geometric_indices(1, 5, 1.0), DomainError);
}

TEST_CASE("pointwise log-log fit is exact on a pure power law") {
    LogAbsFn f = [](long n) { return std::log(2.5) - 0.37 * std::log((double)n); };
    auto r = fit_loglog_pointwise(f, {10, 10000}, -0.37);
    CHECK(r.fitted_value == doctest::Approx(-0.37).epsilon(1e-12));
    CHECK(r.abs_error <= 1e-12);
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.method == FitMethod::loglog_ols);
    CHECK(r.window.lo == 10);
    CHECK(r.window.hi == 10000);
}

TEST_CASE("pointwise fit skips exact zeros and enforces minimum samples") {
    LogAbsFn f = [](long n) {
        if (n % 2 == 0) return -std::numeric_limits<double>::infinity();
        return -0.5 * std::log((double)n);
    };
    auto r = fit_loglog_pointwise(f, {11, 2001}, -0.5);
    CHECK(r.fitted_value == doctest::Approx(-0.5).epsilon(1e-12));

    CHECK_THROWS_AS(fit_loglog_pointwise(f, {11, 15}, -0.5), InsufficientData);
    CHECK_THROWS_AS(fit_loglog_pointwise(f, {100, 10}, -0.5), DomainError);
}

TEST_CASE("windowed RMS fit sees through oscillation zeros") {
    LogAbsFn f = [](long n) {
        const double v = std::sin(0.37 * n) * std::pow((double)n, -0.3);
        if (v == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(std::fabs(v));
    };
    auto r = fit_loglog_rms(f, {100, 100000}, -0.3);
    CHECK(r.fitted_value == doctest::Approx(-0.3).epsilon(0.02));
    CHECK(r.method == FitMethod::loglog_ols);

    CHECK_THROWS_AS(fit_loglog_rms(f, {100, 140}, -0.3), InsufficientData);
    CHECK_THROWS_AS(fit_loglog_rms(f, {100, 100000}, -0.3, 0.9), DomainError);
}

TEST_CASE("log-sum-exp accumulates across scales and tolerates zeros") {
    LogSumExp lse;
    CHECK(lse.value() == -std::numeric_limits<double>::infinity());
    lse.add(std::log(1.0));
    lse.add(std::log(2.0));
    lse.add(std::log(3.0));
    CHECK(lse.value() == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(lse.count() == 3);

    LogSumExp wide;
    wide.add(-std::numeric_limits<double>::infinity());
    wide.add(700.0);
    wide.add(-700.0);
    CHECK(wide.value() == doctest::Approx(700.0).epsilon(1e-14));

    LogSumExp zeros;
    zeros.add(-std::numeric_limits<double>::infinity());
    CHECK(zeros.value() == -std::numeric_limits<double>::infinity());
}

TEST_CASE("fit reports keep |fitted - predicted| as their error") {
    auto r = make_fit_report(-0.26, -0.25, {100, 1000}, 0.99, FitMethod::loglog_ols);
    CHECK(r.abs_error == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(std::string(to_string(FitMethod::zero_crossing)) == "zero_crossing");
    CHECK(std::string(to_string(FitMethod::ratio_limit)) == "ratio_limit");
    CHECK(std::string(to_string(FitMethod::loglog_ols)) == "loglog_ols");
}
