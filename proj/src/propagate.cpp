#include "critjac/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critjac/fit.hpp"

namespace critjac::propagate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-step sup-norm amplification/decay bound for the two-term map; used to
// size the rescale trigger band so mantissas stay inside [1e-100, 1e+100]
// between checkpoints (rescaling happens only on checkpoint boundaries).
double growth_bound(double E, const ModelParams& p) {
    return std::max(4.0, std::fabs(E) + std::fabs(p.b) + 3.0);
}

struct Band {
    double lo, hi;
};

Band trigger_band(double G, long stride) {
    const double margin = static_cast<double>(stride) * std::log10(G);
    return {std::pow(10.0, -100.0 + margin), std::pow(10.0, 100.0 - margin)};
}

long effective_stride(double G, long requested) {
    const long cap = static_cast<long>(100.0 / std::log10(G));
    return std::clamp<long>(cap, 1, requested);
}

}  // namespace

SolutionTrace::SolutionTrace(ModelParams p, double E, long first, long stride,
                             std::vector<double> mantissas,
                             std::vector<double> segment_log,
                             std::pair<double, double> anchor_values)
    : params_(p), E_(E), first_(first), stride_(stride),
      values_(std::move(mantissas)), segment_log_(std::move(segment_log)),
      anchor_(anchor_values) {
    const std::size_t want =
        values_.empty() ? 0 : (values_.size() - 1) / static_cast<std::size_t>(stride_) + 1;
    if (values_.size() < 2 || segment_log_.size() != want)
        throw DomainError("SolutionTrace: inconsistent segment bookkeeping");
}

std::size_t SolutionTrace::segment(long n) const {
    return static_cast<std::size_t>((n - first_) / stride_);
}

void SolutionTrace::check(long n) const {
    if (n < first_index() || n > last_index())
        throw OutOfRange("SolutionTrace: index outside the computed range");
}

double SolutionTrace::mantissa(long n) const {
    check(n);
    return values_[static_cast<std::size_t>(n - first_)];
}

double SolutionTrace::log_scale(long n) const {
    check(n);
    return segment_log_[segment(n)];
}

double SolutionTrace::log_abs(long n) const {
    const double m = mantissa(n);
    if (m == 0.0) return kNegInf;
    return std::log(std::fabs(m)) + segment_log_[segment(n)];
}

int SolutionTrace::sign(long n) const {
    const double m = mantissa(n);
    return (m > 0.0) - (m < 0.0);
}

double SolutionTrace::reconstruct(long n) const {
    return mantissa(n) * std::exp(log_scale(n));
}

SolutionTrace solve_recurrence(const ModelParams& p, double E, long anchor_index,
                               std::pair<double, double> anchor_values, long n_last,
                               long checkpoint_stride) {
    p.validate();
    if (!std::isfinite(E))
        throw DomainError("solve_recurrence: E must be finite");
    if (anchor_index < 0)
        throw DomainError("solve_recurrence: anchor_index must be >= 0");
    if (anchor_index == 0 && p.a0 == model::A0Convention::zero)
        throw DomainError(
            "solve_recurrence: anchoring at (u_0, u_1) requires a0 convention one");
    if (checkpoint_stride < 1)
        throw DomainError("solve_recurrence: checkpoint_stride must be >= 1");
    if (!std::isfinite(anchor_values.first) || !std::isfinite(anchor_values.second))
        throw DomainError("solve_recurrence: anchor values must be finite");
    if (anchor_values.first == 0.0 && anchor_values.second == 0.0)
        throw DegenerateAnchor("solve_recurrence: both anchor values are zero");
    if (n_last < anchor_index + 1)
        throw DomainError("solve_recurrence: n_last must reach past the anchor pair");

    const double G = growth_bound(E, p);
    const long stride = effective_stride(G, checkpoint_stride);
    const Band band = trigger_band(G, stride);

    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n_last - anchor_index + 1));
    std::vector<double> seg;
    seg.reserve(static_cast<std::size_t>((n_last - anchor_index) / stride + 2));

    double log_acc = 0.0;
    double um = anchor_values.first;
    double u = anchor_values.second;
    {
        const double s = std::max(std::fabs(um), std::fabs(u));
        if (s > band.hi || s < band.lo) {      // s > 0: anchor is nontrivial
            um /= s;
            u /= s;
            log_acc = std::log(s);
        }
    }
    seg.push_back(log_acc);
    vals.push_back(um);
    vals.push_back(u);

    for (long n = anchor_index + 1; n < n_last; ++n) {
        const double an = model::seq_a(n, p);
        const double anm = model::seq_a(n - 1, p);
        const double bn = model::seq_b(n, p);
        double next = ((E - bn) * u - anm * um) / an;
        const long idx = n + 1;
        if ((idx - anchor_index) % stride == 0) {
            const double s = std::max(std::fabs(u), std::fabs(next));
            if (s > 0.0 && (s > band.hi || s < band.lo)) {
                u /= s;
                next /= s;
                log_acc += std::log(s);
            }
            seg.push_back(log_acc);
        }
        vals.push_back(next);
        um = u;
        u = next;
    }
    return SolutionTrace(p, E, anchor_index, stride, std::move(vals), std::move(seg),
                         anchor_values);
}

std::pair<double, double> orthopoly_anchor(const ModelParams& p, double E) {
    p.validate();
    return {1.0, (E - model::seq_b(1, p)) / model::seq_a(1, p)};
}

ScaledPair propagate_blocks(const ModelParams& p, double E,
                            std::pair<double, double> u1, long n) {
    p.validate();
    if (!std::isfinite(E))
        throw DomainError("propagate_blocks: E must be finite");
    if (n < 1)
        throw DomainError("propagate_blocks: n must be >= 1");
    if (u1.first == 0.0 && u1.second == 0.0)
        throw DegenerateAnchor("propagate_blocks: U_1 is the zero vector");

    double x = u1.first, y = u1.second, log_acc = 0.0;
    for (long k = 1; k <= n; ++k) {
        // Blocks have real entries for real E; stay in doubles.
        const double an2 = model::seq_a(2 * k, p);
        const double an2m = model::seq_a(2 * k - 1, p);
        const double an2mm = model::seq_a(2 * k - 2, p);
        const double bodd = model::seq_b(2 * k - 1, p);
        // B_k = T_{2k} T_{2k-1} expanded:
        const double t10 = -an2mm / an2m, t11 = (E - bodd) / an2m;
        const double s10 = -an2m / an2, s11 = E / an2;
        const double b00 = t10, b01 = t11;
        const double b10 = s11 * t10, b11 = s10 + s11 * t11;
        const double nx = b00 * x + b01 * y;
        const double ny = b10 * x + b11 * y;
        x = nx;
        y = ny;
        const double s = std::max(std::fabs(x), std::fabs(y));
        if (s == 0.0)
            throw DegenerateAnchor(
                "propagate_blocks: anchor annihilated by the first block "
                "(u_1 = 0 under a0 convention zero)");
        if (s > 1e60 || s < 1e-60) {
            x /= s;
            y /= s;
            log_acc += std::log(s);
        }
    }
    return {x, y, log_acc};
}

double partial_norm(const SolutionTrace& t, long n_last) {
    if (n_last < t.first_index() || n_last > t.last_index())
        throw OutOfRange("partial_norm: n_last outside the trace");
    LogSumExp lse;
    for (long n = t.first_index(); n <= n_last; ++n) lse.add(2.0 * t.log_abs(n));
    return lse.value();
}

double recurrence_residual(const SolutionTrace& t, long n) {
    if (n - 1 < t.first_index() || n + 1 > t.last_index())
        throw OutOfRange("recurrence_residual: needs n-1..n+1 inside the trace");
    const ModelParams& p = t.params();
    const double L1 = t.log_scale(n - 1);
    const double L2 = t.log_scale(n);
    const double L3 = t.log_scale(n + 1);
    const double Lm = std::max({L1, L2, L3});
    const double um = t.mantissa(n - 1) * std::exp(L1 - Lm);
    const double u = t.mantissa(n) * std::exp(L2 - Lm);
    const double up = t.mantissa(n + 1) * std::exp(L3 - Lm);
    const double x1 = model::seq_a(n, p) * up;
    const double x2 = (model::seq_b(n, p) - t.energy()) * u;
    const double x3 = model::seq_a(n - 1, p) * um;
    const double denom = std::fabs(x1) + std::fabs(x2) + std::fabs(x3);
    if (denom == 0.0) return 0.0;
    return std::fabs(x1 + x2 + x3) / denom;
}

}  // namespace critjac::propagate
