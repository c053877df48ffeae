#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "critjac/model.hpp"

namespace critjac::propagate {

using model::ModelParams;

// Forward-propagated solution samples with piecewise-constant log rescaling.
// Stored mantissas share one scale per checkpoint segment of length
// checkpoint_stride, so u_n = mantissa(n) * exp(log_scale(n)) exactly. For
// E <= 0 the sup-norm of the running pair stays polynomial and no rescale
// ever fires (log_scale identically 0); rescaling only matters for E > 0,
// where solutions grow beyond double range.
class SolutionTrace {
public:
    SolutionTrace(ModelParams p, double E, long first, long stride,
                  std::vector<double> mantissas, std::vector<double> segment_log,
                  std::pair<double, double> anchor_values);

    long first_index() const { return first_; }
    long last_index() const { return first_ + static_cast<long>(values_.size()) - 1; }
    long checkpoint_stride() const { return stride_; }
    double energy() const { return E_; }
    const ModelParams& params() const { return params_; }
    std::pair<double, double> anchor_values() const { return anchor_; }

    double mantissa(long n) const;        // throws OutOfRange
    double log_scale(long n) const;       // enclosing segment's accumulated log
    double log_abs(long n) const;         // log|u_n|, -inf for exact zeros
    int sign(long n) const;               // -1, 0, +1
    double reconstruct(long n) const;     // may over/underflow for E > 0

    std::size_t size() const { return values_.size(); }

private:
    ModelParams params_;
    double E_;
    long first_;
    long stride_;
    std::vector<double> values_;          // mantissas, index first_..first_+size-1
    std::vector<double> segment_log_;     // one entry per segment
    std::pair<double, double> anchor_;

    std::size_t segment(long n) const;
    void check(long n) const;
};

// Propagate a_n u_{n+1} + b_n u_n + a_{n-1} u_{n-1} = E u_n forward from
// (u_{anchor_index}, u_{anchor_index+1}) = anchor_values up to index n_last.
// anchor_index >= 1; anchor_index = 0 additionally requires a0 convention
// "one" (under "zero" the first row never couples to u_0). Throws
// DegenerateAnchor when both anchor values vanish.
SolutionTrace solve_recurrence(const ModelParams& p, double E, long anchor_index,
                               std::pair<double, double> anchor_values, long n_last,
                               long checkpoint_stride = 64);

// Dirichlet (orthogonal-polynomial) anchor: u_1 = 1, u_2 = (E - b_1)/a_1.
std::pair<double, double> orthopoly_anchor(const ModelParams& p, double E);

// Rescaled U_{2n+1} = (B_n ... B_1) U_1 with U_1 = (u_0, u_1):
// components are (u_{2n}, u_{2n+1}) mantissas sharing log_scale.
struct ScaledPair {
    double u_even = 0.0;   // u_{2n}
    double u_odd = 0.0;    // u_{2n+1}
    double log_scale = 0.0;
};

ScaledPair propagate_blocks(const ModelParams& p, double E,
                            std::pair<double, double> u1, long n);

// log of sum_{n = first..n_last} u_n^2, scale-aware. Throws OutOfRange when
// n_last lies outside the trace.
double partial_norm(const SolutionTrace& t, long n_last);

// Relative residual |a_n u_{n+1} + b_n u_n + a_{n-1} u_{n-1} - E u_n| over
// the sum of term magnitudes, for interior n. Scale differences across a
// checkpoint boundary are reconciled before comparing.
double recurrence_residual(const SolutionTrace& t, long n);

}  // namespace critjac::propagate
