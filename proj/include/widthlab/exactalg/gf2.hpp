#pragma once

// Packed-bitset linear algebra over GF(2).

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "widthlab/exactalg/matrix.hpp"

namespace widthlab {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  // Parity of popcount(this & o).
  bool dot(const BitVector& o) const {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }

  std::optional<std::size_t> first_set_from(std::size_t start) const {
    for (std::size_t i = start; i < size_; ++i) {
      const std::size_t w = i >> 6;
      const std::uint64_t word = words_[w] >> (i & 63);
      if (word) {
        const std::size_t hit = i + static_cast<std::size_t>(std::countr_zero(word));
        return hit < size_ ? std::optional(hit) : std::nullopt;
      }
      i = (w + 1) * 64 - 1;
    }
    return std::nullopt;
  }

  static BitVector from_vector(const Vector<Gf2>& v) {
    BitVector b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].value()) b.set(i);
    return b;
  }

  Vector<Gf2> to_vector() const {
    Vector<Gf2> v(size_);
    for (std::size_t i = 0; i < size_; ++i) v[i] = Gf2(test(i) ? 1 : 0);
    return v;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// GF(2) matrix with packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix from_sparse(const SparseMatrix<Gf2>& a) {
    BitMatrix m(a.rows(), a.cols());
    for (const auto& e : a.entries()) m.rows_[e.row].set(e.col, e.value.value());
    return m;
  }

  static BitMatrix from_dense(const Matrix<Gf2>& a) {
    BitMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j).value()) m.rows_[i].set(j);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }

  /// Column-pivot elimination, lowest pivot row per column.
  std::size_t rank() const {
    auto work = rows_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < work.size(); ++c) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < work.size(); ++i)
        if (work[i].test(c)) {
          p = i;
          break;
        }
      if (!p) continue;
      std::swap(work[r], work[*p]);
      for (std::size_t i = r + 1; i < work.size(); ++i)
        if (work[i].test(c)) work[i] ^= work[r];
      ++r;
    }
    return r;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

namespace detail {

struct Gf2SolveOutcome {
  std::optional<BitVector> solution;
  std::optional<BitVector> certificate;
};

// Solves B w = y, or finds u with u^T B = 0 and u^T y = 1.
inline Gf2SolveOutcome gf2_solve(const BitMatrix& b, const BitVector& y) {
  const std::size_t m = b.rows(), n = b.cols();
  if (y.size() != m) throw InputError("right-hand side length does not match row count");
  // Augmented rows: [ B | y | I_m ].
  const std::size_t width = n + 1 + m;
  std::vector<BitVector> work(m, BitVector(width));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (b.row(i).test(j)) work[i].set(j);
    if (y.test(i)) work[i].set(n);
    work[i].set(n + 1 + i);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m; ++i)
      if (work[i].test(c)) {
        p = i;
        break;
      }
    if (!p) continue;
    std::swap(work[r], work[*p]);
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && work[i].test(c)) work[i] ^= work[r];
    pivot_cols.push_back(c);
    ++r;
  }
  Gf2SolveOutcome out;
  for (std::size_t i = r; i < m; ++i) {
    if (work[i].test(n)) {
      BitVector u(m);
      for (std::size_t k = 0; k < m; ++k)
        if (work[i].test(n + 1 + k)) u.set(k);
      out.certificate = std::move(u);
      return out;
    }
  }
  BitVector w(n);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k)
    if (work[k].test(n)) w.set(pivot_cols[k]);
  out.solution = std::move(w);
  return out;
}

}  // namespace detail

}  // namespace widthlab
