#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "critjac/model.hpp"

namespace critjac::spectral {

using model::ModelParams;

// Leading N x N section of a Jacobi matrix: diag = (b_1..b_N),
// offdiag = (a_1..a_{N-1}), all offdiagonals strictly positive.
struct TruncatedJacobi {
    std::vector<double> diag;
    std::vector<double> offdiag;

    long dim() const { return static_cast<long>(diag.size()); }
    void validate() const;                    // throws DomainError
    double inf_norm() const;                  // max absolute row sum
    // y = (T - shift I) x, sizes dim().
    void apply_shifted(const std::vector<double>& x, double shift,
                       std::vector<double>& y) const;
};

TruncatedJacobi truncate(const ModelParams& p, long dim);

// Number of eigenvalues strictly below x, by counting negative pivots of the
// LDL^T factorization of T - xI. An exactly zero pivot deterministically
// retries with the shift perturbed by multiples of 2^{-40} * inf_norm.
long sturm_count(const TruncatedJacobi& T, double x);

// All eigenvalues in (lo, hi), each bracketed by bisection to width <= tol,
// ascending. Count equals sturm_count(hi) - sturm_count(lo). Independent
// eigenvalues may be refined on up to `threads` worker threads; the result
// does not depend on the thread count.
std::vector<double> eigs_in_interval(const TruncatedJacobi& T, double lo,
                                     double hi, double tol, int threads = 1);

// ||T w - lambda w|| / ||w|| after a few inverse-iteration refinements of w
// from a fixed start; diagnostic companion to eigs_in_interval.
double eigen_residual(const TruncatedJacobi& T, double lambda);

struct EigenReport {
    std::vector<double> eigenvalues;   // stabilized, ascending, simple
    long truncation_n = 0;             // coarse size N
    long truncation_n2 = 0;            // fine size (2N)
    long stabilized_count = 0;
    double tolerance = 0.0;            // stabilization tolerance used
};

// First n_max positive eigenvalues computed at sizes dim and 2*dim; an
// eigenvalue counts as stabilized when the two values agree within
// tol * max(1, E). Returns the fine-size values. Throws NotStabilized when
// the stabilized prefix is shorter than n_max. Requires b > 0 (for b < 0
// apply the b -> -b reflection and negate).
EigenReport stabilized_positive_eigs(const ModelParams& p, long n_max, long dim,
                                     double tol, int threads = 1);

struct CountingCheck {
    double energy = 0.0;
    long count = 0;          // stabilized eigenvalues strictly below energy
    double bound = 0.0;      // (1/2) (E/b)^{1/alpha}
    double slack = 0.0;      // bound - count
    bool ok = false;
};

// Counting bound N(E) <= (1/2)(E/b)^{1/alpha}. Throws
// InsufficientStabilization when E exceeds the stabilized range.
CountingCheck counting_bound_check(const ModelParams& p, double E,
                                   const EigenReport& report);

struct BoundRow {
    long n = 0;
    double value = 0.0;      // E_n
    double lower = 0.0;      // 2^alpha b n^alpha
    double upper = 0.0;      // only meaningful when has_upper
    bool has_upper = false;  // asserted only for b >= sqrt(6)
    double ratio = 0.0;      // E_n / (b^{1-2 alpha} n^alpha), reported always
    bool ok = false;
};

struct BoundsReport {
    std::vector<BoundRow> rows;
    bool upper_asserted = false;
    bool all_ok = false;
};

// Per-index bounds on the stabilized eigenvalues. The lower bound
// E_n >= 2^alpha b n^alpha is always asserted; the two-sided envelope
// E_n <= 2^{2+alpha} / (3^{1/alpha} - 1)^alpha * b n^alpha only for
// b >= sqrt(6). For smaller b the scaled ratio is reported, not asserted.
BoundsReport eigenvalue_bounds_check(const ModelParams& p,
                                     const EigenReport& report);

// Number of odd sites spanned by the low-energy subspace at level a:
// floor((1/2) (2a/b)^{1/alpha}); sites 2m-1 with m <= cutoff are excluded
// from trial vectors.
long h1_site_cutoff(const ModelParams& p, double a);

// ||(J - aI) psi|| / (a ||psi||) for an explicit vector psi over sites
// 1..psi.size(). psi must vanish on the excluded odd sites and on the last
// two sites (so the truncation acts like the half-line operator). Throws
// SupportViolation otherwise.
double gap_trial_ratio(const ModelParams& p, double a,
                       const std::vector<double>& psi);

struct GapReport {
    double a = 0.0;
    long dim = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    long forbidden_sites = 0;
    long violations = 0;       // ratio < 1 - 1e-12
    double min_ratio = 0.0;
};

// Random dense trial vectors on the allowed sites of [1, dim-2], entries
// uniform in [-1, 1] from a fixed deterministic generator. Each must satisfy
// ||(J - aI) psi|| >= a ||psi|| up to 1e-12 relative slack.
GapReport gap_inequality_check(const ModelParams& p, double a, long dim,
                               long trials, std::uint64_t seed);

// ||(J - aI) delta_{2m-1}||^2 - a^2
//   = (2m-2)^{2 alpha} + (2m-1)^{2 alpha} + (b (2m-1)^alpha - a)^2 - a^2,
// m >= 2. Negative values witness spectrum within distance a of a.
double delta_test_energy(const ModelParams& p, long m, double a);

// Spectral window ((a/2b)^{1/alpha}, (3a/2b)^{1/alpha}) where the odd-site
// diagonal passes through the level 2a.
std::pair<double, double> test_window(const ModelParams& p, double a);

struct BlockTestFunction {
    std::vector<long> sites;       // odd sites carrying +/-1, ascending
    std::vector<double> values;    // alternating signs, same length
    double delta_n = 0.0;          // subinterval width
    double norm2 = 0.0;            // ||f||^2 = number of sites
    double energy2 = 0.0;          // ||(J - aI) f||^2
    bool energy_ok = false;        // energy2 <= a^2 norm2 (+1e-12 slack)
};

// k-th of n alternating-sign test functions on the odd sites of the window,
// k in 1..n. Throws WindowTooSmall when the subinterval width drops below 2
// (no guaranteed odd site per subinterval).
BlockTestFunction block_test_function(const ModelParams& p, double a, long n,
                                      long k);

// Smallest multiplier C such that a = C b^{1-2 alpha} n^alpha admits a full
// family of n energy-satisfying test functions with subinterval width >= 2,
// maximized over n = 1..n_max. Purely empirical calibration; nothing about
// its value is asserted beyond finiteness.
double calibrated_block_constant(double alpha, double b, long n_max = 6);

}  // namespace critjac::spectral
