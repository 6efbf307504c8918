#include "mbg/matrix.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mbg {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw std::overflow_error("dimension product overflows size_t");
  }
  return a * b;
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::size_t checked_lcm(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero dimension");
  return checked_mul(a / std::gcd(a, b), b);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(checked_mul(rows, cols), fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::ones_row(std::size_t n) { return Matrix(1, n, 1.0); }

Matrix Matrix::ones_col(std::size_t n) { return Matrix(n, 1, 1.0); }

Matrix Matrix::row_vector(std::span<const double> values) {
  Matrix m(1, values.size());
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

Matrix Matrix::col_vector(std::span<const double> values) {
  Matrix m(values.size(), 1);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

Matrix Matrix::logical(std::size_t rows, std::span<const std::size_t> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] < 1 || columns[j] > rows) {
      throw std::out_of_range("logical column index out of range");
    }
    m(columns[j] - 1, j) = 1.0;
  }
  return m;
}

Matrix Matrix::logical(std::size_t rows, std::initializer_list<std::size_t> columns) {
  return logical(rows, std::span<const std::size_t>(columns.begin(), columns.size()));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  // ikj order keeps the inner loop contiguous for row-major data.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const double* brow = &rhs.data_[k * rhs.cols_];
      double* orow = &out.data_[i * rhs.cols_];
      for (std::size_t j = 0; j < rhs.cols_; ++j) orow[j] += a * brow[j];
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("matrix sum shape mismatch");
  }
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("matrix difference shape mismatch");
  }
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("max_abs_diff shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m = std::max(m, std::abs(data_[i] - rhs.data_[i]));
  }
  return m;
}

bool Matrix::approx_equal(const Matrix& rhs, double tol) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && max_abs_diff(rhs) <= tol;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << " [";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << " ";
      os << (*this)(r, c);
    }
  }
  os << "]";
  return os.str();
}

Matrix LogicalVector::dense() const {
  if (index < 1 || index > dim) throw std::out_of_range("logical vector index");
  Matrix m(dim, 1);
  m(index - 1, 0) = 1.0;
  return m;
}

LogicalVector logical_stp(const LogicalVector& a, const LogicalVector& b) {
  return LogicalVector{checked_mul(a.dim, b.dim), (a.index - 1) * b.dim + b.index};
}

std::size_t radix_product(std::span<const std::size_t> radices) {
  std::size_t p = 1;
  for (std::size_t k : radices) p = checked_mul(p, k);
  return p;
}

std::size_t lex_encode(std::span<const std::size_t> radices,
                       std::span<const std::size_t> digits) {
  if (radices.size() != digits.size()) {
    throw std::invalid_argument("lex_encode: radix/digit count mismatch");
  }
  std::size_t alpha = 0;
  for (std::size_t j = 0; j < radices.size(); ++j) {
    if (radices[j] < 1) throw std::invalid_argument("lex_encode: zero radix");
    if (digits[j] < 1 || digits[j] > radices[j]) {
      throw std::out_of_range("lex_encode: digit out of range");
    }
    alpha = alpha * radices[j] + (digits[j] - 1);
  }
  return alpha + 1;
}

void lex_decode_into(std::size_t alpha, std::span<const std::size_t> radices,
                     std::span<std::size_t> digits) {
  if (digits.size() != radices.size()) {
    throw std::invalid_argument("lex_decode: digit span size mismatch");
  }
  const std::size_t total = radix_product(radices);
  if (alpha < 1 || alpha > total) throw std::out_of_range("lex_decode: index out of range");
  std::size_t rem = alpha - 1;
  for (std::size_t j = radices.size(); j-- > 0;) {
    digits[j] = rem % radices[j] + 1;
    rem /= radices[j];
  }
}

std::vector<std::size_t> lex_decode(std::size_t alpha,
                                    std::span<const std::size_t> radices) {
  std::vector<std::size_t> digits(radices.size());
  lex_decode_into(alpha, radices, digits);
  return digits;
}

bool next_digits(std::span<const std::size_t> radices, std::span<std::size_t> digits) {
  for (std::size_t j = radices.size(); j-- > 0;) {
    if (digits[j] < radices[j]) {
      ++digits[j];
      return true;
    }
    digits[j] = 1;
  }
  return false;
}

}  // namespace mbg
