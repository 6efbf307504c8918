#pragma once

#include <span>
#include <vector>

#include "mbg/matrix.hpp"

namespace mbg {

Matrix kron(const Matrix& a, const Matrix& b);

// Semi-tensor product A |x| B = (A (x) I_{x/b}) (B (x) I_{x/c}) with
// x = lcm(cols(A), rows(B)). Coincides with the ordinary product when the
// inner dimensions already match.
Matrix stp(const Matrix& a, const Matrix& b);
Matrix stp_chain(std::span<const Matrix> factors);

// Swap matrix W_[h,q] of size hq x hq: column (i-1)q + j is delta_hq^{i+(j-1)h}.
// For H in Delta_h, Q in Delta_q it exchanges factors: stp(Q, H) =
// W_[h,q] * stp(H, Q).
Matrix swap_matrix(std::size_t h, std::size_t q);

// Order-reduce matrix O_q = delta_{q^2}[1, q+2, 2q+3, ..., q^2], so
// stp(Q, Q) = O_q * Q for every Q in Delta_q.
Matrix order_reduce_matrix(std::size_t q);

// Selector M_[h,q,x] = 1_h^T (x) I_q (x) 1_x^T: picks the middle factor out of
// stp(H, Q, X) for logical H, Q, X of dims h, q, x.
Matrix selector_matrix(std::size_t h, std::size_t q, std::size_t x);

// Value of a pseudo-logical function from its structure row: L has one column
// per argument profile, so g(x_1, ..., x_n) = L * stp of the delta columns is
// a column pick.
double eval_structure(const Matrix& l_row, std::span<const LogicalVector> args);

// Inner sum over all profiles of two scalar functions given by structure rows:
// sum_x f(x) g(x) = L_f * L_g^T.
double inner_sum(const Matrix& l_f, const Matrix& l_g);

}  // namespace mbg
