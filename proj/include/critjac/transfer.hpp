#pragma once

#include "critjac/mat2.hpp"
#include "critjac/model.hpp"

namespace critjac::transfer {

using model::ModelParams;

// One-step transfer matrix of a_n u_{n+1} + b_n u_n + a_{n-1} u_{n-1} = E u_n:
//   T_n = [[0, 1], [-a_{n-1}/a_n, (E - b_n)/a_n]],  n >= 1.
Mat2 transfer_T(long n, double E, const ModelParams& p);

// Two-step block B_n = T_{2n} T_{2n-1}, n >= 1. At E = 0 the block is exactly
// upper triangular: [[-(1 - 1/(2n-1))^alpha, -b], [0, -(1 - 1/(2n))^alpha]].
Mat2 block_B(long n, double E, const ModelParams& p);

// Conjugating matrix
//   C_n = [[1, -b], [1, 0]]
//       + (2n)^{-alpha} [[bE + E/(2b), 0], [E/(2b), -E/2]]
//       + (2n)^{-1}     [[0, 0], [-alpha, alpha b]].
Mat2 matrix_C(long n, double E, const ModelParams& p);

// Target of the conjugation (sign flipped into the residual below):
//   Btilde_n = [[0, 1], [-1, 2]]
//            + (2n)^{-alpha} [[0, 0], [0, bE]]
//            + n^{-1}        [[0, 0], [alpha, -alpha]].
Mat2 matrix_Btilde(long n, double E, const ModelParams& p);

// || C_n B_n C_n^{-1} + Btilde_n ||_F. Decays like n^{-2 alpha}.
// Throws SingularConjugator when C_n is numerically singular.
double conjugacy_residual(long n, double E, const ModelParams& p);

// Oscillatory ansatz for E < 0, 2/3 < alpha <= 1, b > 0:
//   z_n = n^gamma exp(A n^delta),
//   gamma = -alpha/4, delta = 1 - alpha/2, A = i sqrt(-bE) / (2^{alpha/2} delta).
cplx ansatz_A(double E, const ModelParams& p);
cplx ansatz_z(long n, double E, const ModelParams& p);       // n >= 1

// S_n = [[conj(z_{n-1}), z_{n-1}], [conj(z_n), z_n]], defined for n >= 2
// (z_0 is divergent, so index 1 stays out of the frame).
Mat2 ansatz_S(long n, double E, const ModelParams& p);

// || S_{n+1}^{-1} Btilde_n S_n - I ||_F for n >= 2. Decays like n^{-3 alpha/2},
// which is summable precisely when alpha > 2/3. Throws SingularConjugator
// when S_{n+1} is numerically singular (phase increment hitting a multiple
// of pi), DomainError outside the ansatz domain.
double ansatz_residual(long n, double E, const ModelParams& p);

}  // namespace critjac::transfer
