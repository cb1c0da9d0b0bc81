#include "prolim/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace prolim {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw std::invalid_argument("Matrix: ragged initializer");
    }
    for (long long v : r) {
      data_.emplace_back(v);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("Matrix::from_rows: row length mismatch");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw std::invalid_argument("Matrix::from_columns: column length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, c) = columns[c][r];
    }
  }
  return m;
}

Matrix Matrix::diagonal(const Vector& entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(i, i) = entries[i];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v[r] = (*this)(r, c);
  }
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    out.push_back(column(c));
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      t(c, r) = (*this)(r, c);
    }
  }
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c) {
      m(i, c) = (*this)(indices[i], c);
    }
  }
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix m(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      m(r, j) = (*this)(r, indices[j]);
    }
  }
  return m;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw std::out_of_range("Matrix::block out of range");
  }
  Matrix m(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      m(r, c) = (*this)(row0 + r, col0 + c);
    }
  }
  return m;
}

Matrix Matrix::hcat(const Matrix& left, const Matrix& right) {
  if (left.rows_ != right.rows_) {
    throw std::invalid_argument("Matrix::hcat: row count mismatch");
  }
  Matrix m(left.rows_, left.cols_ + right.cols_);
  for (std::size_t r = 0; r < left.rows_; ++r) {
    for (std::size_t c = 0; c < left.cols_; ++c) {
      m(r, c) = left(r, c);
    }
    for (std::size_t c = 0; c < right.cols_; ++c) {
      m(r, left.cols_ + c) = right(r, c);
    }
  }
  return m;
}

Matrix Matrix::vcat(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_) {
    throw std::invalid_argument("Matrix::vcat: column count mismatch");
  }
  Matrix m(top.rows_ + bottom.rows_, top.cols_);
  for (std::size_t c = 0; c < top.cols_; ++c) {
    for (std::size_t r = 0; r < top.rows_; ++r) {
      m(r, c) = top(r, c);
    }
    for (std::size_t r = 0; r < bottom.rows_; ++r) {
      m(top.rows_ + r, c) = bottom(r, c);
    }
  }
  return m;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    std::swap((*this)(a, c), (*this)(b, c));
  }
}

void Matrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    std::swap((*this)(r, a), (*this)(r, b));
  }
}

void Matrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) {
    return;
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    (*this)(dst, c) += factor * (*this)(src, c);
  }
}

void Matrix::add_column_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) {
    return;
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    (*this)(r, dst) += factor * (*this)(r, src);
  }
}

void Matrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) {
    (*this)(r, c) = -(*this)(r, c);
  }
}

void Matrix::negate_column(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) {
    (*this)(r, c) = -(*this)(r, c);
  }
}

bool Matrix::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) {
      return false;
    }
  }
  return true;
}

Integer Matrix::determinant() const {
  if (!is_square()) {
    throw std::invalid_argument("Matrix::determinant: not square");
  }
  const std::size_t n = rows_;
  if (n == 0) {
    return 1;
  }
  Matrix a = *this;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) {
        ++swap_with;
      }
      if (swap_with == n) {
        return 0;
      }
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("Matrix::operator*: dimension mismatch");
  }
  Matrix m(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) {
        continue;
      }
      for (std::size_t c = 0; c < other.cols_; ++c) {
        m(r, c) += a * other(k, c);
      }
    }
  }
  return m;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) {
    throw std::invalid_argument("Matrix::operator*(Vector): dimension mismatch");
  }
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix::operator+: dimension mismatch");
  }
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m.data_[i] += other.data_[i];
  }
  return m;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix::operator-: dimension mismatch");
  }
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m.data_[i] -= other.data_[i];
  }
  return m;
}

Matrix Matrix::scaled(const Integer& factor) const {
  Matrix m = *this;
  for (auto& v : m.data_) {
    v *= factor;
  }
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) {
      out << (c ? "," : "") << (*this)(r, c);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

Matrix power(const Matrix& square, std::size_t exponent) {
  if (!square.is_square()) {
    throw std::invalid_argument("power: not square");
  }
  Matrix result = Matrix::identity(square.rows());
  Matrix base = square;
  while (exponent > 0) {
    if (exponent & 1U) {
      result = result * base;
    }
    exponent >>= 1U;
    if (exponent > 0) {
      base = base * base;
    }
  }
  return result;
}

}  // namespace prolim
