#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mbg {

// Shape arithmetic for semi-tensor products multiplies many small integers;
// an unchecked lcm/product can wrap around and silently corrupt every shape
// that follows, so all dimension math is funnelled through these.
std::size_t checked_mul(std::size_t a, std::size_t b);
std::size_t checked_pow(std::size_t base, std::size_t exp);
std::size_t checked_lcm(std::size_t a, std::size_t b);

// Dense real matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix ones_row(std::size_t n);
  static Matrix ones_col(std::size_t n);
  static Matrix row_vector(std::span<const double> values);
  static Matrix col_vector(std::span<const double> values);
  // Logical matrix delta_rows[cols...]: j-th column is delta_rows^{cols[j]}
  // with 1-based indices.
  static Matrix logical(std::size_t rows, std::span<const std::size_t> columns);
  static Matrix logical(std::size_t rows, std::initializer_list<std::size_t> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix& operator*=(double s);
  friend Matrix operator*(double s, Matrix m) {
    m *= s;
    return m;
  }

  bool all_finite() const;
  double max_abs() const;
  // Largest |a_ij - b_ij|; shapes must match.
  double max_abs_diff(const Matrix& rhs) const;
  bool approx_equal(const Matrix& rhs, double tol) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Canonical basis column delta_dim^index (1-based index).
struct LogicalVector {
  std::size_t dim = 1;
  std::size_t index = 1;
  Matrix dense() const;
};

// delta_e^i x delta_g^j = delta_{eg}^{(i-1)g + j}: the right factor's index
// varies fastest, which is what ties logical vectors to lexicographic
// profile indices everywhere below.
LogicalVector logical_stp(const LogicalVector& a, const LogicalVector& b);

std::size_t radix_product(std::span<const std::size_t> radices);

// Mixed-radix encoding of 1-based digit tuples, last digit fastest:
// alpha = 1 + sum_j (d_j - 1) * prod_{j' > j} k_{j'}.
std::size_t lex_encode(std::span<const std::size_t> radices,
                       std::span<const std::size_t> digits);
std::vector<std::size_t> lex_decode(std::size_t alpha,
                                    std::span<const std::size_t> radices);
void lex_decode_into(std::size_t alpha, std::span<const std::size_t> radices,
                     std::span<std::size_t> digits);

// Odometer increment over 1-based digits; false once the last tuple rolls over.
bool next_digits(std::span<const std::size_t> radices, std::span<std::size_t> digits);

}  // namespace mbg
