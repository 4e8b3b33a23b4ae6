#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/exactalg/scalar.hpp"

namespace widthlab {

template <ExactScalar T>
using Vector = std::vector<T>;

template <ExactScalar T>
bool is_zero_vector(std::span<const T> v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); });
}

template <ExactScalar T>
bool is_zero_vector(const Vector<T>& v) {
  return is_zero_vector(std::span<const T>(v));
}

// v += c * w
template <ExactScalar T>
void add_scaled(Vector<T>& v, const T& c, const Vector<T>& w) {
  if (is_zero(c)) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_zero(w[i])) v[i] += c * w[i];
  }
}

template <ExactScalar T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  }
  return s;
}

template <ExactScalar T>
Vector<T> vec_sub(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <ExactScalar T>
Vector<T> vec_add(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <ExactScalar T, ExactScalar S>
Vector<T> convert_vector(const Vector<S>& v) {
  Vector<T> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (std::is_same_v<S, Integer>) {
      out.push_back(convert<T>(x));
    } else {
      out.push_back(T(x));
    }
  }
  return out;
}

/// Dense row-major matrix over an exact ring.
template <ExactScalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row length mismatch building matrix");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InputError("column length mismatch building matrix");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<T> row(std::size_t i) const { return Vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vector<T> column(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix rows_range(std::size_t begin, std::size_t end) const {
    Matrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  Vector<T> apply(const Vector<T>& x) const {
    if (x.size() != cols_) throw InputError("dimension mismatch in matrix-vector product");
    Vector<T> y(rows_, T(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_zero(x[j])) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const T& a = (*this)(i, j);
        if (!is_zero(a)) y[i] += a * x[j];
      }
    }
    return y;
  }

  // x^T A
  Vector<T> apply_left(const Vector<T>& x) const {
    if (x.size() != rows_) throw InputError("dimension mismatch in vector-matrix product");
    Vector<T> y(cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& a = (*this)(i, j);
        if (!is_zero(a)) y[j] += x[i] * a;
      }
    }
    return y;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("dimension mismatch in matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (!is_zero(bkj)) c(i, j) += aik * bkj;
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations; used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& c) {
    if (is_zero(c)) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      const T& s = (*this)(src, j);
      if (!is_zero(s)) (*this)(dst, j) += c * s;
    }
  }
  // col[dst] += c * col[src]
  void add_column(std::size_t dst, std::size_t src, const T& c) {
    if (is_zero(c)) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      const T& s = (*this)(i, src);
      if (!is_zero(s)) (*this)(i, dst) += c * s;
    }
  }
  void scale_row(std::size_t r, const T& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= c;
  }
  void scale_column(std::size_t col, const T& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, col) *= c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <ExactScalar T, ExactScalar S>
Matrix<T> convert_matrix(const Matrix<S>& m) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<S, Integer>) {
        out(i, j) = convert<T>(m(i, j));
      } else {
        out(i, j) = T(m(i, j));
      }
    }
  return out;
}

/// Sparse matrix as a sorted triple list; the interchange form for boundary operators.
template <ExactScalar T>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    T value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Validates: indices in range, no repeated position, no zero coefficient.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
    SparseMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& e = entries[k];
      if (e.row >= rows || e.col >= cols) throw InputError("sparse entry index out of bounds");
      if (is_zero(e.value)) throw InputError("sparse entry with zero coefficient");
      if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col)
        throw InputError("repeated sparse entry at (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
    m.entries_ = std::move(entries);
    return m;
  }

  static SparseMatrix from_dense(const Matrix<T>& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (!is_zero(d(i, j))) m.entries_.push_back({i, j, d(i, j)});
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  Matrix<T> to_dense() const {
    Matrix<T> d(rows_, cols_);
    for (const auto& e : entries_) d(e.row, e.col) = e.value;
    return d;
  }

  Vector<T> apply(const Vector<T>& x) const {
    if (x.size() != cols_) throw InputError("dimension mismatch in sparse matrix-vector product");
    Vector<T> y(rows_, T(0));
    for (const auto& e : entries_)
      if (!is_zero(x[e.col])) y[e.row] += e.value * x[e.col];
    return y;
  }

  Vector<T> apply_left(const Vector<T>& x) const {
    if (x.size() != rows_) throw InputError("dimension mismatch in sparse vector-matrix product");
    Vector<T> y(cols_, T(0));
    for (const auto& e : entries_)
      if (!is_zero(x[e.row])) y[e.col] += x[e.row] * e.value;
    return y;
  }

  SparseMatrix transpose() const {
    std::vector<Entry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return from_entries(cols_, rows_, std::move(t));
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

template <ExactScalar T>
SparseMatrix<T> operator*(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  return SparseMatrix<T>::from_dense(a.to_dense() * b.to_dense());
}

}  // namespace widthlab
