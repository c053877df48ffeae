#include "critjac/transfer.hpp"

#include <cmath>

namespace critjac::transfer {

namespace {

constexpr double kSingularRel = 1e-12;

void check_ansatz_domain(double E, const ModelParams& p) {
    p.validate();
    if (!(E < 0.0))
        throw DomainError("ansatz: requires E < 0");
    if (!(p.alpha > 2.0 / 3.0))
        throw DomainError("ansatz: requires alpha > 2/3");
    if (!(p.b > 0.0))
        throw DomainError("ansatz: requires b > 0 (reflect b -> -b otherwise)");
}

}  // namespace

Mat2 transfer_T(long n, double E, const ModelParams& p) {
    p.validate();
    if (n < 1) throw DomainError("transfer_T: n must be >= 1");
    const double an = model::seq_a(n, p);
    const double anm = model::seq_a(n - 1, p);
    const double bn = model::seq_b(n, p);
    return {0.0, 1.0, -anm / an, (E - bn) / an};
}

Mat2 block_B(long n, double E, const ModelParams& p) {
    if (n < 1) throw DomainError("block_B: n must be >= 1");
    return transfer_T(2 * n, E, p) * transfer_T(2 * n - 1, E, p);
}

Mat2 matrix_C(long n, double E, const ModelParams& p) {
    p.validate();
    if (n < 1) throw DomainError("matrix_C: n must be >= 1");
    const double s = std::pow(2.0 * static_cast<double>(n), -p.alpha);
    const double t = 1.0 / (2.0 * static_cast<double>(n));
    const double b = p.b;
    return {1.0 + s * (b * E + E / (2.0 * b)), -b,
            1.0 + s * (E / (2.0 * b)) - t * p.alpha, s * (-E / 2.0) + t * p.alpha * b};
}

Mat2 matrix_Btilde(long n, double E, const ModelParams& p) {
    p.validate();
    if (n < 1) throw DomainError("matrix_Btilde: n must be >= 1");
    const double s = std::pow(2.0 * static_cast<double>(n), -p.alpha);
    const double t = 1.0 / static_cast<double>(n);
    return {0.0, 1.0,
            -1.0 + t * p.alpha, 2.0 + s * p.b * E - t * p.alpha};
}

double conjugacy_residual(long n, double E, const ModelParams& p) {
    const Mat2 C = matrix_C(n, E, p);
    const double scale = C.frobenius();
    if (std::abs(C.det()) <= kSingularRel * scale * scale)
        throw SingularConjugator("conjugacy_residual: C_n is singular");
    const Mat2 R = C * block_B(n, E, p) * C.inverse() + matrix_Btilde(n, E, p);
    return R.frobenius();
}

cplx ansatz_A(double E, const ModelParams& p) {
    check_ansatz_domain(E, p);
    const double delta = 1.0 - p.alpha / 2.0;
    return {0.0, std::sqrt(-p.b * E) / (std::pow(2.0, p.alpha / 2.0) * delta)};
}

cplx ansatz_z(long n, double E, const ModelParams& p) {
    if (n < 1) throw DomainError("ansatz_z: n must be >= 1");
    const cplx A = ansatz_A(E, p);
    const double gamma = -p.alpha / 4.0;
    const double delta = 1.0 - p.alpha / 2.0;
    const double nn = static_cast<double>(n);
    // A is purely imaginary, so |z_n| = n^gamma and exp stays on the circle.
    return std::pow(nn, gamma) * std::exp(A * std::pow(nn, delta));
}

Mat2 ansatz_S(long n, double E, const ModelParams& p) {
    if (n < 2) throw DomainError("ansatz_S: n must be >= 2 (z_0 diverges)");
    const cplx zm = ansatz_z(n - 1, E, p);
    const cplx zn = ansatz_z(n, E, p);
    return {std::conj(zm), zm, std::conj(zn), zn};
}

double ansatz_residual(long n, double E, const ModelParams& p) {
    if (n < 2) throw DomainError("ansatz_residual: n must be >= 2");
    const Mat2 Sn = ansatz_S(n, E, p);
    const Mat2 Sn1 = ansatz_S(n + 1, E, p);
    const double scale = Sn1.frobenius();
    if (std::abs(Sn1.det()) <= kSingularRel * scale * scale)
        throw SingularConjugator("ansatz_residual: S_{n+1} is singular");
    const Mat2 R = Sn1.inverse() * matrix_Btilde(n, E, p) * Sn - Mat2::identity();
    return R.frobenius();
}

}  // namespace critjac::transfer
