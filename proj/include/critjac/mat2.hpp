#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "critjac/errors.hpp"

namespace critjac {

using cplx = std::complex<double>;

// Dense 2x2 complex matrix, row-major. Transfer-matrix entries are real for
// real E, but the conjugation and ansatz machinery is genuinely complex, so
// one complex type serves the whole chain.
struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return m00 * m11 - m01 * m10; }
    cplx trace() const { return m00 + m11; }

    double frobenius() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) +
                         std::norm(m10) + std::norm(m11));
    }

    Mat2 inverse() const {
        const cplx dd = det();
        if (dd == cplx{0.0, 0.0})
            throw DomainError("Mat2::inverse: singular matrix");
        return {m11 / dd, -m01 / dd, -m10 / dd, m00 / dd};
    }

    std::pair<cplx, cplx> apply(cplx x, cplx y) const {
        return {m00 * x + m01 * y, m10 * x + m11 * y};
    }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Mat2 operator*(cplx s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

inline bool finite(const Mat2& a) {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(a.m00) && ok(a.m01) && ok(a.m10) && ok(a.m11);
}

}  // namespace critjac
