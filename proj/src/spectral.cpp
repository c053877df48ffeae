#include "critjac/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

namespace critjac::spectral {

namespace {

// Deterministic, platform-independent generator for trial vectors.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform_pm1() {
        return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
    }
};

void run_parallel(long m, int threads, const std::function<void(long)>& fn) {
    threads = std::clamp(threads, 1, 256);
    if (threads == 1 || m <= 1) {
        for (long j = 0; j < m; ++j) fn(j);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long>(threads, m));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (long j = next.fetch_add(1); j < m; j = next.fetch_add(1)) fn(j);
        });
    for (auto& th : pool) th.join();
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// LU factorization of T - lambda I with partial pivoting, then one solve.
// Row swaps introduce a second superdiagonal (du2). Zero pivots are replaced
// by a tiny value, the usual inverse-iteration convention.
void solve_shifted(const TruncatedJacobi& T, double lambda, std::vector<double>& x) {
    const long n = T.dim();
    std::vector<double> dl(T.offdiag), d(n), du(T.offdiag), du2;
    if (n > 2) du2.assign(static_cast<std::size_t>(n - 2), 0.0);
    std::vector<bool> swapped(n > 1 ? static_cast<std::size_t>(n - 1) : 0, false);
    for (long i = 0; i < n; ++i) d[i] = T.diag[i] - lambda;

    const double tiny = std::ldexp(std::max(T.inf_norm(), 1.0), -80);
    for (long i = 0; i + 1 < n; ++i) {
        if (std::fabs(d[i]) >= std::fabs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;

    for (long i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            x[i + 1] -= dl[i] * x[i];
        } else {
            const double tmp = x[i];
            x[i] = x[i + 1];
            x[i + 1] = tmp - dl[i] * x[i];
        }
    }
    x[n - 1] /= d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (long i = n - 3; i >= 0; --i)
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
}

}  // namespace

void TruncatedJacobi::validate() const {
    if (diag.empty())
        throw DomainError("TruncatedJacobi: empty diagonal");
    if (offdiag.size() + 1 != diag.size())
        throw DomainError("TruncatedJacobi: offdiag must have length dim-1");
    for (double v : diag)
        if (!std::isfinite(v)) throw DomainError("TruncatedJacobi: diagonal not finite");
    for (double v : offdiag)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("TruncatedJacobi: off-diagonals must be positive");
}

double TruncatedJacobi::inf_norm() const {
    const long n = dim();
    double m = 0.0;
    for (long i = 0; i < n; ++i) {
        double r = std::fabs(diag[i]);
        if (i > 0) r += offdiag[i - 1];
        if (i + 1 < n) r += offdiag[i];
        m = std::max(m, r);
    }
    return m;
}

void TruncatedJacobi::apply_shifted(const std::vector<double>& x, double shift,
                                    std::vector<double>& y) const {
    const long n = dim();
    if (static_cast<long>(x.size()) != n)
        throw DomainError("apply_shifted: size mismatch");
    y.resize(x.size());
    for (long i = 0; i < n; ++i) {
        double v = (diag[i] - shift) * x[i];
        if (i > 0) v += offdiag[i - 1] * x[i - 1];
        if (i + 1 < n) v += offdiag[i] * x[i + 1];
        y[i] = v;
    }
}

TruncatedJacobi truncate(const ModelParams& p, long dim) {
    p.validate();
    if (dim < 1) throw DomainError("truncate: dim must be >= 1");
    TruncatedJacobi T;
    T.diag.resize(static_cast<std::size_t>(dim));
    T.offdiag.resize(static_cast<std::size_t>(dim - 1));
    for (long i = 0; i < dim; ++i) T.diag[i] = model::seq_b(i + 1, p);
    for (long i = 0; i + 1 < dim; ++i) T.offdiag[i] = model::seq_a(i + 1, p);
    return T;
}

long sturm_count(const TruncatedJacobi& T, double x) {
    T.validate();
    const long n = T.dim();
    const double scale = std::max(T.inf_norm(), 1.0);
    double shift = x;
    for (int attempt = 0; attempt < 8; ++attempt) {
        long neg = 0;
        bool zero_pivot = false;
        double d = T.diag[0] - shift;
        if (d == 0.0) zero_pivot = true;
        if (d < 0.0) ++neg;
        for (long i = 1; i < n && !zero_pivot; ++i) {
            d = (T.diag[i] - shift) - T.offdiag[i - 1] * T.offdiag[i - 1] / d;
            if (d == 0.0) { zero_pivot = true; break; }
            if (d < 0.0) ++neg;
        }
        if (!zero_pivot) return neg;
        shift = x + static_cast<double>(attempt + 1) * std::ldexp(scale, -40);
    }
    // Deterministic last resort: treat exact-zero pivots as tiny negatives.
    long neg = 0;
    double d = T.diag[0] - x;
    if (d == 0.0) d = -std::ldexp(scale, -60);
    if (d < 0.0) ++neg;
    for (long i = 1; i < n; ++i) {
        d = (T.diag[i] - x) - T.offdiag[i - 1] * T.offdiag[i - 1] / d;
        if (d == 0.0) d = -std::ldexp(scale, -60);
        if (d < 0.0) ++neg;
    }
    return neg;
}

namespace {

double bisect_kth(const TruncatedJacobi& T, long k, double lo, double hi, double tol) {
    // Invariant: sturm_count(lo) <= k < sturm_count(hi).
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;   // hit double resolution
        if (sturm_count(T, mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> eigs_in_interval(const TruncatedJacobi& T, double lo, double hi,
                                     double tol, int threads) {
    T.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("eigs_in_interval: need finite lo < hi");
    if (!(tol > 0.0))
        throw DomainError("eigs_in_interval: tol must be positive");
    const long clo = sturm_count(T, lo);
    const long m = sturm_count(T, hi) - clo;
    std::vector<double> out(static_cast<std::size_t>(std::max<long>(m, 0)));
    run_parallel(m, threads, [&](long j) {
        out[static_cast<std::size_t>(j)] = bisect_kth(T, clo + j, lo, hi, tol);
    });
    return out;
}

double eigen_residual(const TruncatedJacobi& T, double lambda) {
    T.validate();
    const long n = T.dim();
    std::vector<double> w(static_cast<std::size_t>(n));
    SplitMix64 rng{0x6a09e667f3bcc908ULL};
    for (auto& v : w) v = rng.uniform_pm1();
    double s = norm2(w);
    for (auto& v : w) v /= s;
    for (int it = 0; it < 3; ++it) {
        solve_shifted(T, lambda, w);
        s = norm2(w);
        if (!(s > 0.0) || !std::isfinite(s)) break;
        for (auto& v : w) v /= s;
    }
    std::vector<double> y;
    T.apply_shifted(w, lambda, y);
    return norm2(y) / norm2(w);
}

EigenReport stabilized_positive_eigs(const ModelParams& p, long n_max, long dim,
                                     double tol, int threads) {
    p.validate();
    if (!(p.b > 0.0))
        throw DomainError(
            "stabilized_positive_eigs: requires b > 0 (use the b -> -b reflection)");
    if (n_max < 1) throw DomainError("stabilized_positive_eigs: n_max must be >= 1");
    if (dim < 8) throw DomainError("stabilized_positive_eigs: dim too small");
    if (!(tol > 0.0)) throw DomainError("stabilized_positive_eigs: tol must be > 0");

    const TruncatedJacobi T1 = truncate(p, dim);
    const TruncatedJacobi T2 = truncate(p, 2 * dim);
    auto positives_below = [](const TruncatedJacobi& T, double x) {
        return sturm_count(T, x) - sturm_count(T, 0.0);
    };
    double hi = 4.0 * std::pow(2.0, p.alpha) * p.b *
                std::pow(static_cast<double>(n_max), p.alpha);
    for (int guard = 0;
         positives_below(T1, hi) < n_max || positives_below(T2, hi) < n_max;
         ++guard) {
        if (guard > 60)
            throw NotStabilized("stabilized_positive_eigs: failed to bracket");
        hi *= 2.0;
    }
    // Bisection width: 1e-10 * max(1, |E|) with the interval edge as scale.
    const double btol = 1e-10 * std::max(1.0, hi);
    std::vector<double> e1 = eigs_in_interval(T1, 0.0, hi, btol, threads);
    std::vector<double> e2 = eigs_in_interval(T2, 0.0, hi, btol, threads);

    long k = 0;
    const long m = std::min<long>(static_cast<long>(e1.size()),
                                  static_cast<long>(e2.size()));
    while (k < m && std::fabs(e1[k] - e2[k]) < tol * std::max(1.0, std::fabs(e2[k])))
        ++k;
    if (k < n_max)
        throw NotStabilized("stabilized_positive_eigs: only " + std::to_string(k) +
                            " of " + std::to_string(n_max) +
                            " positive eigenvalues stabilized; enlarge dim");
    for (long i = 0; i + 1 < n_max; ++i)
        if (!(e2[i + 1] - e2[i] > tol))
            throw NotStabilized(
                "stabilized_positive_eigs: near-degenerate pair within tolerance");

    EigenReport r;
    r.eigenvalues.assign(e2.begin(), e2.begin() + n_max);
    r.truncation_n = dim;
    r.truncation_n2 = 2 * dim;
    r.stabilized_count = n_max;
    r.tolerance = tol;
    return r;
}

CountingCheck counting_bound_check(const ModelParams& p, double E,
                                   const EigenReport& report) {
    p.validate();
    if (!(p.b > 0.0)) throw DomainError("counting_bound_check: requires b > 0");
    if (!(E > 0.0) || !std::isfinite(E))
        throw DomainError("counting_bound_check: E must be positive");
    if (report.eigenvalues.empty() || E > report.eigenvalues.back())
        throw InsufficientStabilization(
            "counting_bound_check: E exceeds the stabilized range");
    CountingCheck c;
    c.energy = E;
    c.count = static_cast<long>(
        std::lower_bound(report.eigenvalues.begin(), report.eigenvalues.end(), E) -
        report.eigenvalues.begin());
    c.bound = 0.5 * std::pow(E / p.b, 1.0 / p.alpha);
    c.slack = c.bound - static_cast<double>(c.count);
    c.ok = static_cast<double>(c.count) <= c.bound * (1.0 + 1e-12);
    return c;
}

BoundsReport eigenvalue_bounds_check(const ModelParams& p,
                                     const EigenReport& report) {
    p.validate();
    if (!(p.b > 0.0)) throw DomainError("eigenvalue_bounds_check: requires b > 0");
    BoundsReport out;
    out.upper_asserted = p.b >= std::sqrt(6.0);
    const double upper_coef =
        std::pow(2.0, 2.0 + p.alpha) /
        std::pow(std::pow(3.0, 1.0 / p.alpha) - 1.0, p.alpha);
    out.all_ok = true;
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        BoundRow row;
        row.n = static_cast<long>(i) + 1;
        row.value = report.eigenvalues[i];
        const double npow = std::pow(static_cast<double>(row.n), p.alpha);
        row.lower = std::pow(2.0, p.alpha) * p.b * npow;
        row.has_upper = out.upper_asserted;
        row.upper = upper_coef * p.b * npow;
        row.ratio = row.value / (std::pow(p.b, 1.0 - 2.0 * p.alpha) * npow);
        row.ok = row.value >= row.lower * (1.0 - 1e-12) &&
                 (!row.has_upper || row.value <= row.upper * (1.0 + 1e-12));
        out.all_ok = out.all_ok && row.ok;
        out.rows.push_back(row);
    }
    return out;
}

long h1_site_cutoff(const ModelParams& p, double a) {
    p.validate();
    if (!(p.b > 0.0)) throw DomainError("h1_site_cutoff: requires b > 0");
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("h1_site_cutoff: a must be positive");
    return static_cast<long>(std::floor(0.5 * std::pow(2.0 * a / p.b, 1.0 / p.alpha)));
}

double gap_trial_ratio(const ModelParams& p, double a,
                       const std::vector<double>& psi) {
    const long cutoff = h1_site_cutoff(p, a);   // validates p, a
    const long len = static_cast<long>(psi.size());
    if (len < 3) throw DomainError("gap_trial_ratio: trial vector too short");
    for (double v : psi)
        if (!std::isfinite(v)) throw DomainError("gap_trial_ratio: non-finite entry");
    // Support must stay inside [1, len-2] so the truncation acts like the
    // half-line operator on psi.
    if (psi[static_cast<std::size_t>(len - 1)] != 0.0 ||
        psi[static_cast<std::size_t>(len - 2)] != 0.0)
        throw SupportViolation("gap_trial_ratio: support touches the truncation edge");
    for (long m = 1; m <= cutoff; ++m) {
        const long site = 2 * m - 1;
        if (site > len) break;
        if (psi[static_cast<std::size_t>(site - 1)] != 0.0)
            throw SupportViolation("gap_trial_ratio: nonzero at excluded odd site " +
                                   std::to_string(site));
    }
    const double pn = norm2(psi);
    if (pn == 0.0) throw DomainError("gap_trial_ratio: zero trial vector");
    const TruncatedJacobi T = truncate(p, len);
    std::vector<double> y;
    T.apply_shifted(psi, a, y);
    return norm2(y) / (a * pn);
}

GapReport gap_inequality_check(const ModelParams& p, double a, long dim,
                               long trials, std::uint64_t seed) {
    const long cutoff = h1_site_cutoff(p, a);
    if (trials < 1) throw DomainError("gap_inequality_check: trials must be >= 1");
    if (dim < 2 * cutoff + 4)
        throw DomainError("gap_inequality_check: dim too small for this level");
    GapReport r;
    r.a = a;
    r.dim = dim;
    r.trials = trials;
    r.seed = seed;
    r.forbidden_sites = cutoff;
    r.min_ratio = std::numeric_limits<double>::infinity();
    SplitMix64 rng{seed};
    std::vector<double> psi(static_cast<std::size_t>(dim), 0.0);
    for (long t = 0; t < trials; ++t) {
        for (long site = 1; site <= dim - 2; ++site) {
            const bool excluded = (site % 2 == 1) && ((site + 1) / 2 <= cutoff);
            psi[static_cast<std::size_t>(site - 1)] =
                excluded ? 0.0 : rng.uniform_pm1();
        }
        const double ratio = gap_trial_ratio(p, a, psi);
        r.min_ratio = std::min(r.min_ratio, ratio);
        if (ratio < 1.0 - 1e-12) ++r.violations;
    }
    return r;
}

double delta_test_energy(const ModelParams& p, long m, double a) {
    p.validate();
    if (m < 2) throw DomainError("delta_test_energy: m must be >= 2");
    if (!std::isfinite(a)) throw DomainError("delta_test_energy: a must be finite");
    const double s = static_cast<double>(2 * m - 1);
    const double even_lo = std::pow(static_cast<double>(2 * m - 2), 2.0 * p.alpha);
    const double even_hi = std::pow(s, 2.0 * p.alpha);
    const double diag = p.b * std::pow(s, p.alpha) - a;
    return even_lo + even_hi + diag * diag - a * a;
}

std::pair<double, double> test_window(const ModelParams& p, double a) {
    p.validate();
    if (!(p.b > 0.0)) throw DomainError("test_window: requires b > 0");
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("test_window: a must be positive");
    return {std::pow(a / (2.0 * p.b), 1.0 / p.alpha),
            std::pow(3.0 * a / (2.0 * p.b), 1.0 / p.alpha)};
}

BlockTestFunction block_test_function(const ModelParams& p, double a, long n,
                                      long k) {
    const auto [wlo, whi] = test_window(p, a);   // validates p, a
    if (n < 1) throw DomainError("block_test_function: n must be >= 1");
    if (k < 1 || k > n) throw DomainError("block_test_function: k must be in 1..n");
    BlockTestFunction f;
    f.delta_n = (whi - wlo) / static_cast<double>(n);
    if (!(f.delta_n >= 2.0))
        throw WindowTooSmall("block_test_function: subinterval width below 2");
    const double jlo = wlo + static_cast<double>(k - 1) * f.delta_n;
    const double jhi = wlo + static_cast<double>(k) * f.delta_n;

    long s = static_cast<long>(std::ceil(jlo));
    if (s < 1) s = 1;
    if (s % 2 == 0) ++s;
    double sgn = 1.0;
    for (; static_cast<double>(s) < jhi; s += 2) {
        f.sites.push_back(s);
        f.values.push_back(sgn);
        sgn = -sgn;
    }
    if (f.sites.empty())
        throw WindowTooSmall("block_test_function: no odd site in subinterval");
    f.norm2 = static_cast<double>(f.sites.size());

    // (J - a) f has two kinds of rows: the support sites themselves, where
    // only the diagonal survives (neighbors of odd sites are even and carry
    // no f-mass), and even sites flanked by up to two support sites.
    double e2 = 0.0;
    for (long i = 0; i < static_cast<long>(f.sites.size()); ++i) {
        const double bs =
            p.b * std::pow(static_cast<double>(f.sites[static_cast<std::size_t>(i)]),
                           p.alpha);
        e2 += (bs - a) * (bs - a);
    }
    const long e_first = f.sites.front() - 1;
    const long e_last = f.sites.back() + 1;
    for (long e = e_first; e <= e_last; e += 2) {
        if (e < 1) continue;   // no row 0 on the half line
        double v = 0.0;
        // left neighbor e-1, right neighbor e+1; either may carry +/-1
        for (std::size_t i = 0; i < f.sites.size(); ++i) {
            if (f.sites[i] == e - 1)
                v += std::pow(static_cast<double>(e - 1), p.alpha) * f.values[i];
            else if (f.sites[i] == e + 1)
                v += std::pow(static_cast<double>(e), p.alpha) * f.values[i];
        }
        e2 += v * v;
    }
    f.energy2 = e2;
    f.energy_ok = f.energy2 <= a * a * f.norm2 * (1.0 + 1e-12);
    return f;
}

double calibrated_block_constant(double alpha, double b, long n_max) {
    ModelParams p{alpha, b, model::A0Convention::zero};
    p.validate();
    if (!(b > 0.0)) throw DomainError("calibrated_block_constant: requires b > 0");
    if (n_max < 1) throw DomainError("calibrated_block_constant: n_max must be >= 1");
    double C = 0.0;
    for (long n = 1; n <= n_max; ++n) {
        const double base = std::pow(b, 1.0 - 2.0 * alpha) *
                            std::pow(static_cast<double>(n), alpha);
        double c = 0.25;
        bool found = false;
        for (int step = 0; step < 400 && !found; ++step, c *= 1.05) {
            const double a = c * base;
            bool ok = true;
            try {
                for (long k = 1; k <= n && ok; ++k)
                    ok = block_test_function(p, a, n, k).energy_ok;
            } catch (const WindowTooSmall&) {
                ok = false;
            }
            if (ok) {
                C = std::max(C, c);
                found = true;
            }
        }
        if (!found)
            throw DomainError("calibrated_block_constant: no feasible level found");
    }
    return C;
}

}  // namespace critjac::spectral
