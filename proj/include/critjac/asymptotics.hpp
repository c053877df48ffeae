#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "critjac/fit.hpp"
#include "critjac/model.hpp"
#include "critjac/propagate.hpp"

namespace critjac::asymptotics {

using model::ModelParams;
using propagate::SolutionTrace;

// Leading-order generalized eigenvector of the conjugated block problem:
//   v_n^{+/-} = n^{-alpha/4} exp(+/- i Phi(n)),
//   Phi(n) = (sqrt(-bE) / 2^{alpha/2}) * n^{1 - alpha/2} / (1 - alpha/2).
// Requires E < 0, 2/3 < alpha <= 1, b > 0; throws DomainError otherwise.
std::complex<double> predicted_v(long n, double E, const ModelParams& p, int sign);

// Phase accumulated at index n (the exponent above, real and positive).
double predicted_phase(long n, double E, const ModelParams& p);

// Leading-order U_{2n+1} = (u_{2n}, u_{2n+1}):
//   (-1)^n T (v_{n-1}, v_n), T = (1/b) [[0, b], [-1, 1]],
// i.e. first component (-1)^n v_n, second (-1)^n (v_n - v_{n-1})/b. n >= 2.
std::pair<std::complex<double>, std::complex<double>>
predicted_U(long n, double E, const ModelParams& p, int sign);

// Zero-energy branches, leading order, as (u_{2n}, u_{2n+1}):
//   branch 1: ((-1)^n n^{-alpha/2}, 0)
//   branch 2: ((-1)^n b n^{1-alpha/2}, (-1)^n n^{-alpha/2})
std::pair<double, double> predicted_zero_energy(long n, const ModelParams& p,
                                                int branch);

enum class Subsample {
    even_sites_signed,   // s_k = (-1)^k u_{2k}, RMS over geometric windows
    raw                  // pointwise log|u_n| against log n
};

// Envelope exponent of the trace; predicted value -alpha/4 (the E < 0 law).
// Window indices are half-indices k (sites 2k) for even_sites_signed and
// site indices for raw. Throws InsufficientData on short windows.
FitReport envelope_exponent_fit(const SolutionTrace& t, Subsample mode,
                                IndexWindow window);

// Same fitter on a plain series values[i] ~ index first_index + i, pointwise.
FitReport envelope_exponent_fit(const std::vector<double>& values, long first_index,
                                IndexWindow window, double predicted);

// Sign changes of s_k = (-1)^k u_{2k} up to half-index N grow like
// Phi(N)/pi. Fits crossing counts against N^{1 - alpha/2} on a geometric
// grid over the window; predicted coefficient
//   sqrt(-bE) / (2^{alpha/2} (1 - alpha/2) pi).
FitReport phase_frequency_fit(const SolutionTrace& t, const ModelParams& p,
                              double E, IndexWindow window);

// exp(partial_norm(u; n_last) - partial_norm(v; n_last)) for the two traces
// anchored at (u_1, u_2) = anchor1 / anchor2. E < 0. For distinct anchors the
// ratio stays bounded away from 0 and infinity: no subordinate solution.
double subordinacy_ratio(const ModelParams& p, double E, long n_last,
                         std::pair<double, double> anchor1,
                         std::pair<double, double> anchor2);

// Summary of the ratio over a geometric grid of n_last values.
struct RatioSummary {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<long> grid;
};

RatioSummary subordinacy_scan(const ModelParams& p, double E, IndexWindow window,
                              std::pair<double, double> anchor1,
                              std::pair<double, double> anchor2);

// Growth exponent of sum_{n<=N} u_n^2: OLS of partial_norm against log N on a
// geometric site grid; predicted slope 1 - alpha/2 for E < 0.
FitReport partial_norm_growth_fit(const SolutionTrace& t, IndexWindow window);

}  // namespace critjac::asymptotics
