#include "mbg/stp.hpp"

#include <stdexcept>

namespace mbg {

namespace {

// A (x) I_k without forming I_k.
Matrix kron_identity_right(const Matrix& a, std::size_t k) {
  if (k == 1) return a;
  Matrix out(checked_mul(a.rows(), k), checked_mul(a.cols(), k));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const double v = a(r, c);
      if (v == 0.0) continue;
      for (std::size_t t = 0; t < k; ++t) out(r * k + t, c * k + t) = v;
    }
  }
  return out;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(checked_mul(a.rows(), b.rows()), checked_mul(a.cols(), b.cols()));
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const double v = a(ar, ac);
      if (v == 0.0) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
        }
      }
    }
  }
  return out;
}

Matrix stp(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("stp of empty matrix");
  const std::size_t x = checked_lcm(a.cols(), b.rows());
  if (x == a.cols() && x == b.rows()) return a * b;
  const Matrix ae = kron_identity_right(a, x / a.cols());
  const Matrix be = kron_identity_right(b, x / b.rows());
  return ae * be;
}

Matrix stp_chain(std::span<const Matrix> factors) {
  if (factors.empty()) throw std::invalid_argument("stp_chain of nothing");
  Matrix acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = stp(acc, factors[i]);
  return acc;
}

Matrix swap_matrix(std::size_t h, std::size_t q) {
  const std::size_t n = checked_mul(h, q);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 1; i <= h; ++i) {
    for (std::size_t j = 1; j <= q; ++j) {
      cols[(i - 1) * q + (j - 1)] = i + (j - 1) * h;
    }
  }
  return Matrix::logical(n, cols);
}

Matrix order_reduce_matrix(std::size_t q) {
  std::vector<std::size_t> cols(q);
  for (std::size_t k = 1; k <= q; ++k) cols[k - 1] = (k - 1) * (q + 1) + 1;
  return Matrix::logical(checked_mul(q, q), cols);
}

Matrix selector_matrix(std::size_t h, std::size_t q, std::size_t x) {
  return kron(kron(Matrix::ones_row(h), Matrix::identity(q)), Matrix::ones_row(x));
}

double eval_structure(const Matrix& l_row, std::span<const LogicalVector> args) {
  if (l_row.rows() != 1) throw std::invalid_argument("structure row must be 1 x n");
  std::size_t dim = 1, index = 1;
  for (const LogicalVector& v : args) {
    dim = checked_mul(dim, v.dim);
    index = (index - 1) * v.dim + v.index;
  }
  if (l_row.cols() != dim) throw std::invalid_argument("structure row width mismatch");
  return l_row(0, index - 1);
}

double inner_sum(const Matrix& l_f, const Matrix& l_g) {
  if (l_f.rows() != 1 || l_g.rows() != 1 || l_f.cols() != l_g.cols()) {
    throw std::invalid_argument("inner_sum rows must be 1 x n with equal n");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < l_f.cols(); ++j) s += l_f(0, j) * l_g(0, j);
  return s;
}

}  // namespace mbg
