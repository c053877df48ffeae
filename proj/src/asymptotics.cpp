#include "critjac/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "critjac/transfer.hpp"

namespace critjac::asymptotics {

namespace {

void check_oscillatory_domain(double E, const ModelParams& p) {
    p.validate();
    if (!(E < 0.0))
        throw DomainError("asymptotics: requires E < 0");
    if (!(p.alpha > 2.0 / 3.0))
        throw DomainError("asymptotics: requires alpha > 2/3");
    if (!(p.b > 0.0))
        throw DomainError("asymptotics: requires b > 0 (reflect b -> -b otherwise)");
}

double sign_pm(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

IndexWindow clamp_window(IndexWindow w, long lo, long hi) {
    IndexWindow out{std::max(w.lo, lo), std::min(w.hi, hi)};
    if (out.lo < 1 || out.hi < out.lo)
        throw InsufficientData("fit window does not intersect the trace");
    return out;
}

}  // namespace

std::complex<double> predicted_v(long n, double E, const ModelParams& p, int sign) {
    check_oscillatory_domain(E, p);
    if (n < 1) throw DomainError("predicted_v: n must be >= 1");
    if (sign != 1 && sign != -1) throw DomainError("predicted_v: sign must be +/-1");
    const std::complex<double> v = transfer::ansatz_z(n, E, p);
    return sign == 1 ? v : std::conj(v);
}

double predicted_phase(long n, double E, const ModelParams& p) {
    check_oscillatory_domain(E, p);
    if (n < 1) throw DomainError("predicted_phase: n must be >= 1");
    const double delta = 1.0 - p.alpha / 2.0;
    return std::sqrt(-p.b * E) / std::pow(2.0, p.alpha / 2.0) *
           std::pow(static_cast<double>(n), delta) / delta;
}

std::pair<std::complex<double>, std::complex<double>>
predicted_U(long n, double E, const ModelParams& p, int sign) {
    if (n < 2) throw DomainError("predicted_U: n must be >= 2");
    const std::complex<double> vm = predicted_v(n - 1, E, p, sign);
    const std::complex<double> vn = predicted_v(n, E, p, sign);
    const double s = sign_pm(n);
    return {s * vn, s * (vn - vm) / p.b};
}

std::pair<double, double> predicted_zero_energy(long n, const ModelParams& p,
                                                int branch) {
    p.validate();
    if (n < 1) throw DomainError("predicted_zero_energy: n must be >= 1");
    const double s = sign_pm(n);
    const double nn = static_cast<double>(n);
    if (branch == 1) return {s * std::pow(nn, -p.alpha / 2.0), 0.0};
    if (branch == 2)
        return {s * p.b * std::pow(nn, 1.0 - p.alpha / 2.0),
                s * std::pow(nn, -p.alpha / 2.0)};
    throw DomainError("predicted_zero_energy: branch must be 1 or 2");
}

FitReport envelope_exponent_fit(const SolutionTrace& t, Subsample mode,
                                IndexWindow window) {
    const double predicted = -t.params().alpha / 4.0;
    if (mode == Subsample::even_sites_signed) {
        const long k_lo = (t.first_index() + 1) / 2;
        const long k_hi = t.last_index() / 2;
        const IndexWindow w = clamp_window(window, std::max<long>(k_lo, 1), k_hi);
        return fit_loglog_rms([&t](long k) { return t.log_abs(2 * k); }, w, predicted);
    }
    const IndexWindow w =
        clamp_window(window, std::max<long>(t.first_index(), 1), t.last_index());
    return fit_loglog_pointwise([&t](long n) { return t.log_abs(n); }, w, predicted);
}

FitReport envelope_exponent_fit(const std::vector<double>& values, long first_index,
                                IndexWindow window, double predicted) {
    const long last = first_index + static_cast<long>(values.size()) - 1;
    const IndexWindow w = clamp_window(window, std::max<long>(first_index, 1), last);
    auto log_abs = [&values, first_index](long n) {
        const double v = values[static_cast<std::size_t>(n - first_index)];
        return v == 0.0 ? -std::numeric_limits<double>::infinity()
                        : std::log(std::fabs(v));
    };
    return fit_loglog_pointwise(log_abs, w, predicted);
}

FitReport phase_frequency_fit(const SolutionTrace& t, const ModelParams& p,
                              double E, IndexWindow window) {
    check_oscillatory_domain(E, p);
    if (E != t.energy())
        throw DomainError("phase_frequency_fit: E disagrees with the trace energy");
    const long k_lo = std::max<long>((t.first_index() + 1) / 2, 1);
    const long k_hi = t.last_index() / 2;
    const IndexWindow w = clamp_window(window, k_lo, k_hi);
    const std::vector<long> grid = geometric_indices(w.lo, w.hi, 1.2);
    if (grid.size() < 10)
        throw InsufficientData("phase_frequency_fit: too few grid points");

    const double expo = 1.0 - p.alpha / 2.0;
    std::vector<double> xs, ys;
    xs.reserve(grid.size());
    ys.reserve(grid.size());
    long crossings = 0;
    int last_sign = 0;
    std::size_t g = 0;
    for (long k = k_lo; k <= w.hi && g < grid.size(); ++k) {
        // s_k = (-1)^k u_{2k}; only the sign matters. Zeros defer to the
        // next nonzero sample, so a crossing landing on a zero counts once.
        int s = t.sign(2 * k);
        if (k % 2 != 0) s = -s;
        if (s != 0) {
            if (last_sign != 0 && s != last_sign) ++crossings;
            last_sign = s;
        }
        if (k == grid[g]) {
            xs.push_back(std::pow(static_cast<double>(k), expo));
            ys.push_back(static_cast<double>(crossings));
            ++g;
        }
    }
    const LinearFit f = ols_fit(xs, ys);
    const double predicted =
        std::sqrt(-p.b * E) / (std::pow(2.0, p.alpha / 2.0) * expo * std::numbers::pi);
    return make_fit_report(f.slope, predicted, w, f.r_squared,
                           FitMethod::zero_crossing);
}

double subordinacy_ratio(const ModelParams& p, double E, long n_last,
                         std::pair<double, double> anchor1,
                         std::pair<double, double> anchor2) {
    p.validate();
    if (!(E < 0.0))
        throw DomainError("subordinacy_ratio: requires E < 0");
    const SolutionTrace t1 = propagate::solve_recurrence(p, E, 1, anchor1, n_last);
    const SolutionTrace t2 = propagate::solve_recurrence(p, E, 1, anchor2, n_last);
    return std::exp(partial_norm(t1, n_last) - partial_norm(t2, n_last));
}

RatioSummary subordinacy_scan(const ModelParams& p, double E, IndexWindow window,
                              std::pair<double, double> anchor1,
                              std::pair<double, double> anchor2) {
    p.validate();
    if (!(E < 0.0))
        throw DomainError("subordinacy_scan: requires E < 0");
    if (window.lo < 2 || window.hi < window.lo)
        throw DomainError("subordinacy_scan: bad window");
    const SolutionTrace t1 = propagate::solve_recurrence(p, E, 1, anchor1, window.hi);
    const SolutionTrace t2 = propagate::solve_recurrence(p, E, 1, anchor2, window.hi);
    RatioSummary out;
    out.grid = geometric_indices(window.lo, window.hi, 1.2);
    LogSumExp lse1, lse2;
    long n = t1.first_index();
    for (long g : out.grid) {
        for (; n <= g; ++n) {
            lse1.add(2.0 * t1.log_abs(n));
            lse2.add(2.0 * t2.log_abs(n));
        }
        const double r = std::exp(lse1.value() - lse2.value());
        if (out.grid.front() == g) {
            out.min_ratio = out.max_ratio = r;
        } else {
            out.min_ratio = std::min(out.min_ratio, r);
            out.max_ratio = std::max(out.max_ratio, r);
        }
    }
    return out;
}

FitReport partial_norm_growth_fit(const SolutionTrace& t, IndexWindow window) {
    const IndexWindow w =
        clamp_window(window, std::max<long>(t.first_index() + 1, 2), t.last_index());
    const std::vector<long> grid = geometric_indices(w.lo, w.hi, 1.2);
    if (grid.size() < 10)
        throw InsufficientData("partial_norm_growth_fit: too few grid points");
    std::vector<double> xs, ys;
    xs.reserve(grid.size());
    ys.reserve(grid.size());
    LogSumExp lse;
    long n = t.first_index();
    for (long g : grid) {
        for (; n <= g; ++n) lse.add(2.0 * t.log_abs(n));
        xs.push_back(std::log(static_cast<double>(g)));
        ys.push_back(lse.value());
    }
    const LinearFit f = ols_fit(xs, ys);
    return make_fit_report(f.slope, 1.0 - t.params().alpha / 2.0, w, f.r_squared,
                           FitMethod::loglog_ols);
}

}  // namespace critjac::asymptotics
