#pragma once

#include <functional>
#include <vector>

#include "critjac/errors.hpp"

namespace critjac {

// Closed index window [lo, hi].
struct IndexWindow {
    long lo = 0;
    long hi = 0;
};

enum class FitMethod { loglog_ols, zero_crossing, ratio_limit };

const char* to_string(FitMethod m);

struct FitReport {
    double fitted_value = 0.0;
    double predicted_value = 0.0;
    double abs_error = 0.0;       // |fitted - predicted|, kept consistent
    IndexWindow window;
    double r_squared = 0.0;
    FitMethod method = FitMethod::loglog_ols;
};

FitReport make_fit_report(double fitted, double predicted, IndexWindow w,
                          double r_squared, FitMethod m);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept. Needs >= 2 distinct x.
LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Distinct integers lo, ~lo*ratio, ..., capped at hi (hi always included).
std::vector<long> geometric_indices(long lo, long hi, double ratio);

// log-magnitude accessor: returns log|value at index|, -inf for exact zeros.
using LogAbsFn = std::function<double(long)>;

// OLS of log|value| against log n over [w.lo, w.hi], skipping zeros.
// Throws InsufficientData below min_points usable samples.
FitReport fit_loglog_pointwise(const LogAbsFn& log_abs, IndexWindow w,
                               double predicted, long min_points = 10);

// RMS over geometric windows [w, ratio*w) (each at least min_points samples,
// computed via log-sum-exp so any magnitude is safe), then OLS of log RMS
// against the window's log-midpoint. Throws InsufficientData when fewer than
// min_windows windows fit.
FitReport fit_loglog_rms(const LogAbsFn& log_abs, IndexWindow w,
                         double predicted, double ratio = 1.2,
                         long min_points = 32, long min_windows = 10);

// Streaming log(sum exp(t_i)) accumulator; tolerates -inf terms.
class LogSumExp {
public:
    void add(double t);
    double value() const;         // -inf when empty or all -inf
    long count() const { return count_; }

private:
    double max_ = 0.0;
    double sum_ = 0.0;            // sum exp(t_i - max_)
    bool any_ = false;
    long count_ = 0;
};

}  // namespace critjac
