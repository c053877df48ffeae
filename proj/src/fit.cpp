#include "critjac/fit.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace critjac {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

const char* to_string(FitMethod m) {
    switch (m) {
        case FitMethod::loglog_ols: return "loglog_ols";
        case FitMethod::zero_crossing: return "zero_crossing";
        case FitMethod::ratio_limit: return "ratio_limit";
    }
    std::abort();
}

FitReport make_fit_report(double fitted, double predicted, IndexWindow w,
                          double r_squared, FitMethod m) {
    return {fitted, predicted, std::fabs(fitted - predicted), w, r_squared, m};
}

LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InsufficientData("ols_fit: need at least two samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx; sxy += dx * dy; syy += dy * dy;
    }
    if (sxx == 0.0)
        throw InsufficientData("ols_fit: abscissae are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.r_squared = 1.0;   // exactly constant data: any flat line is exact
    } else {
        const double ss_res = syy - f.slope * sxy;
        f.r_squared = 1.0 - std::max(0.0, ss_res) / syy;
    }
    return f;
}

std::vector<long> geometric_indices(long lo, long hi, double ratio) {
    if (lo < 1 || hi < lo)
        throw DomainError("geometric_indices: need 1 <= lo <= hi");
    if (!(ratio > 1.0))
        throw DomainError("geometric_indices: ratio must exceed 1");
    std::vector<long> out;
    double v = static_cast<double>(lo);
    long last = 0;
    while (v < static_cast<double>(hi)) {
        const long n = static_cast<long>(v);
        if (n > last) { out.push_back(n); last = n; }
        v *= ratio;
    }
    if (hi > last) out.push_back(hi);
    return out;
}

void LogSumExp::add(double t) {
    ++count_;
    if (t == kNegInf) return;
    if (!any_) {
        max_ = t; sum_ = 1.0; any_ = true;
        return;
    }
    if (t > max_) {
        sum_ = sum_ * std::exp(max_ - t) + 1.0;
        max_ = t;
    } else {
        sum_ += std::exp(t - max_);
    }
}

double LogSumExp::value() const {
    if (!any_) return kNegInf;
    return max_ + std::log(sum_);
}

FitReport fit_loglog_pointwise(const LogAbsFn& log_abs, IndexWindow w,
                               double predicted, long min_points) {
    if (w.lo < 1 || w.hi < w.lo)
        throw DomainError("fit_loglog_pointwise: bad window");
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
    for (long n = w.lo; n <= w.hi; ++n) {
        const double L = log_abs(n);
        if (L == kNegInf) continue;   // exact zeros carry no magnitude
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(L);
    }
    if (static_cast<long>(xs.size()) < min_points)
        throw InsufficientData("fit_loglog_pointwise: too few nonzero samples");
    const LinearFit f = ols_fit(xs, ys);
    return make_fit_report(f.slope, predicted, w, f.r_squared, FitMethod::loglog_ols);
}

FitReport fit_loglog_rms(const LogAbsFn& log_abs, IndexWindow w,
                         double predicted, double ratio, long min_points,
                         long min_windows) {
    if (w.lo < 1 || w.hi < w.lo)
        throw DomainError("fit_loglog_rms: bad window");
    if (!(ratio > 1.0))
        throw DomainError("fit_loglog_rms: ratio must exceed 1");
    std::vector<double> xs, ys;
    long start = w.lo;
    while (start <= w.hi) {
        long end = static_cast<long>(std::ceil(static_cast<double>(start) * ratio));
        if (end - start < min_points) end = start + min_points;
        if (end > w.hi + 1) {
            if (end - start > 2 * (w.hi + 1 - start)) break;   // trailing sliver
            end = w.hi + 1;
        }
        if (end - start < min_points) break;
        LogSumExp lse;
        for (long n = start; n < end; ++n) lse.add(2.0 * log_abs(n));
        const double log_ms = lse.value() - std::log(static_cast<double>(lse.count()));
        if (std::isfinite(log_ms)) {
            xs.push_back(0.5 * (std::log(static_cast<double>(start)) +
                                std::log(static_cast<double>(end - 1))));
            ys.push_back(0.5 * log_ms);
        }
        start = end;
    }
    if (static_cast<long>(xs.size()) < min_windows)
        throw InsufficientData("fit_loglog_rms: too few windows");
    const LinearFit f = ols_fit(xs, ys);
    return make_fit_report(f.slope, predicted, w, f.r_squared, FitMethod::loglog_ols);
}

}  // namespace critjac
