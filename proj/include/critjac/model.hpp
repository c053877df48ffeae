#pragma once

#include <cstddef>
#include <vector>

#include "critjac/errors.hpp"

namespace critjac::model {

// Convention for the fictitious entry a_0, which multiplies u_0 in the first
// recurrence row. "zero" decouples u_0 (half-line operator); "one" matches
// the normalization used when a block product is anchored at (u_0, u_1).
enum class A0Convention { zero, one };

struct ModelParams {
    double alpha = 1.0;           // growth exponent, 0 < alpha <= 1
    double b = 1.0;               // odd-site diagonal coupling, b != 0
    A0Convention a0 = A0Convention::zero;

    void validate() const;        // throws DomainError
};

// a_n = n^alpha for n >= 1; a_0 is 0 or 1 by convention.
double seq_a(long n, const ModelParams& p);

// b_n = b * n^alpha for odd n, 0 for even n (n >= 1).
double seq_b(long n, const ModelParams& p);

// One period of a periodic Jacobi matrix: off-diagonals c (positive) and
// diagonals d, both of length K.
struct PeriodicData {
    std::vector<double> c;
    std::vector<double> d;

    std::size_t period() const { return c.size(); }
    void validate() const;        // throws DomainError
};

// Trace of the ordered one-period transfer product
//   prod_{n=K..1} [[0, 1], [-c_{n-1}/c_n, (E - d_n)/c_n]],  c_0 := c_K.
// The trace is invariant under the cyclic index origin.
double periodic_discriminant(const PeriodicData& pd, double E);

enum class CouplingClass { absolutely_continuous, discrete, critical };

const char* to_string(CouplingClass c);

// Trichotomy on |d(0)| vs 2. |d(0)| < 2 - tol: absolutely continuous band
// covering the whole line; |d(0)| > 2 + tol: purely discrete; otherwise
// critical. tol = 0 compares exactly.
CouplingClass classify_coupling(const PeriodicData& pd, double tol = 0.0);

}  // namespace critjac::model
