#include "critjac/model.hpp"

#include <cmath>
#include <cstdlib>

namespace critjac::model {

void ModelParams::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw DomainError("ModelParams: alpha must lie in (0, 1]");
    if (!(b != 0.0) || !std::isfinite(b))
        throw DomainError("ModelParams: b must be finite and nonzero");
}

double seq_a(long n, const ModelParams& p) {
    if (n < 0) throw DomainError("seq_a: n must be >= 0");
    if (n == 0) return p.a0 == A0Convention::zero ? 0.0 : 1.0;
    return std::pow(static_cast<double>(n), p.alpha);
}

double seq_b(long n, const ModelParams& p) {
    if (n < 1) throw DomainError("seq_b: n must be >= 1");
    if (n % 2 == 0) return 0.0;
    return p.b * std::pow(static_cast<double>(n), p.alpha);
}

void PeriodicData::validate() const {
    if (c.empty() || c.size() != d.size())
        throw DomainError("PeriodicData: c and d must be nonempty and equal length");
    for (double v : c)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("PeriodicData: off-diagonals must be positive");
    for (double v : d)
        if (!std::isfinite(v))
            throw DomainError("PeriodicData: diagonals must be finite");
}

double periodic_discriminant(const PeriodicData& pd, double E) {
    pd.validate();
    const std::size_t K = pd.period();
    // Ordered product M_K * ... * M_1, accumulated by left-multiplication.
    // 2x2 entries kept as scalars; c_0 wraps to c_K.
    double p00 = 1.0, p01 = 0.0, p10 = 0.0, p11 = 1.0;
    for (std::size_t i = 0; i < K; ++i) {
        const double c_prev = (i == 0) ? pd.c[K - 1] : pd.c[i - 1];
        const double m10 = -c_prev / pd.c[i];
        const double m11 = (E - pd.d[i]) / pd.c[i];
        // [[0, 1], [m10, m11]] * P
        const double q00 = p10;
        const double q01 = p11;
        const double q10 = m10 * p00 + m11 * p10;
        const double q11 = m10 * p01 + m11 * p11;
        p00 = q00; p01 = q01; p10 = q10; p11 = q11;
    }
    return p00 + p11;
}

const char* to_string(CouplingClass c) {
    switch (c) {
        case CouplingClass::absolutely_continuous: return "absolutely_continuous";
        case CouplingClass::discrete: return "discrete";
        case CouplingClass::critical: return "critical";
    }
    std::abort();
}

CouplingClass classify_coupling(const PeriodicData& pd, double tol) {
    if (tol < 0.0) throw DomainError("classify_coupling: tol must be >= 0");
    const double d0 = std::fabs(periodic_discriminant(pd, 0.0));
    if (d0 < 2.0 - tol) return CouplingClass::absolutely_continuous;
    if (d0 > 2.0 + tol) return CouplingClass::discrete;
    return CouplingClass::critical;
}

}  // namespace critjac::model
