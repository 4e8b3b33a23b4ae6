#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "widthlab/exactalg/matrix.hpp"

namespace widthlab {

/// Which unimodular/invertible transforms to accumulate while diagonalizing.
struct TransformRequest {
  bool left = false;           // U
  bool left_inverse = false;   // U^{-1}
  bool right = false;          // V
  bool right_inverse = false;  // V^{-1}

  static constexpr TransformRequest all() { return {true, true, true, true}; }
  static constexpr TransformRequest none() { return {}; }
};

/// U * A * V = diag(diagonal) padded with zeros.
///
/// Over Z the diagonal is the Smith invariant-factor sequence: positive and
/// each entry divides the next. Over a field every diagonal entry is 1.
/// Transforms that were not requested are left empty.
template <ExactScalar T>
struct NormalForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::vector<T> diagonal;
  Matrix<T> u, u_inv, v, v_inv;
};

namespace detail {

template <ExactScalar T>
class Diagonalizer {
 public:
  Diagonalizer(Matrix<T> a, TransformRequest req) : a_(std::move(a)), req_(req) {
    const std::size_t m = a_.rows(), n = a_.cols();
    if (req_.left) u_ = Matrix<T>::identity(m);
    if (req_.left_inverse) u_inv_ = Matrix<T>::identity(m);
    if (req_.right) v_ = Matrix<T>::identity(n);
    if (req_.right_inverse) v_inv_ = Matrix<T>::identity(n);
  }

  NormalForm<T> run() {
    if constexpr (scalar_traits<T>::is_field) {
      run_field();
    } else {
      run_integer();
    }
    NormalForm<T> out;
    out.rows = a_.rows();
    out.cols = a_.cols();
    out.rank = rank_;
    for (std::size_t t = 0; t < rank_; ++t) out.diagonal.push_back(a_(t, t));
    out.u = std::move(u_);
    out.u_inv = std::move(u_inv_);
    out.v = std::move(v_);
    out.v_inv = std::move(v_inv_);
    return out;
  }

 private:
  // Elementary moves, mirrored onto the requested transforms.
  void row_add(std::size_t dst, std::size_t src, const T& c) {
    a_.add_row(dst, src, c);
    if (req_.left) u_.add_row(dst, src, c);
    if (req_.left_inverse) u_inv_.add_column(src, dst, T(-c));
  }
  void col_add(std::size_t dst, std::size_t src, const T& c) {
    a_.add_column(dst, src, c);
    if (req_.right) v_.add_column(dst, src, c);
    if (req_.right_inverse) v_inv_.add_row(src, dst, T(-c));
  }
  void row_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    a_.swap_rows(x, y);
    if (req_.left) u_.swap_rows(x, y);
    if (req_.left_inverse) u_inv_.swap_columns(x, y);
  }
  void col_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    a_.swap_columns(x, y);
    if (req_.right) v_.swap_columns(x, y);
    if (req_.right_inverse) v_inv_.swap_rows(x, y);
  }
  // row *= c with c a unit; inverse transform scaled by c^{-1}.
  void row_scale(std::size_t r, const T& c) {
    a_.scale_row(r, c);
    if (req_.left) u_.scale_row(r, c);
    if (req_.left_inverse) u_inv_.scale_column(r, T(T(1) / c));
  }

  // Lowest (row, col) nonzero in the active block.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero(std::size_t t) const {
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j)
        if (!is_zero(a_(i, j))) return std::pair{i, j};
    return std::nullopt;
  }

  void run_field() {
    const std::size_t m = a_.rows(), n = a_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      auto piv = first_nonzero(t);
      if (!piv) break;
      row_swap(t, piv->first);
      col_swap(t, piv->second);
      if (!(a_(t, t) == T(1))) row_scale(t, T(T(1) / a_(t, t)));
      for (std::size_t i = t + 1; i < m; ++i)
        if (!is_zero(a_(i, t))) row_add(i, t, T(-a_(i, t)));
      for (std::size_t j = t + 1; j < n; ++j)
        if (!is_zero(a_(t, j))) col_add(j, t, T(-a_(t, j)));
      rank_ = t + 1;
    }
  }

  static Integer abs_of(const Integer& x) { return abs(x); }

  // Minimal |a| over the active block; lowest (row, col) wins ties.
  std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (is_zero(x)) continue;
        if (is_unit(x)) return std::pair{i, j};
        Integer ax = abs_of(x);
        if (!best || ax < best_abs) {
          best = std::pair{i, j};
          best_abs = std::move(ax);
        }
      }
    }
    return best;
  }

  void run_integer() {
    const std::size_t m = a_.rows(), n = a_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      auto piv = min_abs_entry(t);
      if (!piv) break;
      row_swap(t, piv->first);
      col_swap(t, piv->second);
      for (;;) {
        // Clear column t below the pivot by Euclidean steps.
        bool residue = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (is_zero(a_(i, t))) continue;
          Integer q = a_(i, t) / a_(t, t);
          if (!is_zero(q)) row_add(i, t, Integer(-q));
          if (!is_zero(a_(i, t))) residue = true;
        }
        if (residue) {
          std::size_t best = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (!is_zero(a_(i, t)) && abs(a_(i, t)) < abs(a_(best, t))) best = i;
          row_swap(t, best);
          continue;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (is_zero(a_(t, j))) continue;
          Integer q = a_(t, j) / a_(t, t);
          if (!is_zero(q)) col_add(j, t, Integer(-q));
          if (!is_zero(a_(t, j))) residue = true;
        }
        if (residue) {
          std::size_t best = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (!is_zero(a_(t, j)) && abs(a_(t, j)) < abs(a_(t, best))) best = j;
          col_swap(t, best);
          continue;
        }
        // Divisibility: pull an offending row into the pivot row.
        std::optional<std::size_t> offender;
        if (!is_unit(a_(t, t))) {
          for (std::size_t i = t + 1; i < m && !offender; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
              if (!is_zero(a_(i, j)) && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                offender = i;
                break;
              }
        }
        if (!offender) break;
        row_add(t, *offender, Integer(1));
      }
      if (sgn(a_(t, t)) < 0) row_scale(t, Integer(-1));
      rank_ = t + 1;
    }
  }

  Matrix<T> a_;
  TransformRequest req_;
  Matrix<T> u_, u_inv_, v_, v_inv_;
  std::size_t rank_ = 0;
};

}  // namespace detail

template <ExactScalar T>
NormalForm<T> diagonalize(Matrix<T> a, TransformRequest req = TransformRequest::none()) {
  return detail::Diagonalizer<T>(std::move(a), req).run();
}

/// Smith normal form over Z with all four transforms.
struct SmithForm {
  Matrix<Integer> u;
  Matrix<Integer> v;
  std::vector<Integer> d;
  std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const SparseMatrix<Integer>& a) {
  auto nf = diagonalize(a.to_dense(), TransformRequest{true, false, true, false});
  return SmithForm{std::move(nf.u), std::move(nf.v), std::move(nf.diagonal), nf.rank};
}

inline SmithForm smith_normal_form(const Matrix<Integer>& a) {
  auto nf = diagonalize(a, TransformRequest{true, false, true, false});
  return SmithForm{std::move(nf.u), std::move(nf.v), std::move(nf.diagonal), nf.rank};
}

/// The padded diagonal matrix a SmithForm claims U*A*V equals.
inline Matrix<Integer> padded_diagonal(const std::vector<Integer>& d, std::size_t rows, std::size_t cols) {
  Matrix<Integer> m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant_bareiss(Matrix<Integer> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return Integer(1);
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t swap_with = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (!is_zero(m(i, k))) {
          swap_with = i;
          break;
        }
      if (swap_with == k) return Integer(0);
      m.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev;  // exact
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Row Hermite normal form of the lattice spanned by the rows of `gens`.
///
/// Result rows are a basis in echelon form with positive pivots and entries
/// above each pivot reduced into [0, pivot); this basis is unique per lattice.
inline Matrix<Integer> hermite_normal_form(Matrix<Integer> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t t = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < n && t < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = t; i < m; ++i)
        if (!is_zero(a(i, c)) && (!best || abs(a(i, c)) < abs(a(*best, c)))) best = i;
      if (!best) break;
      a.swap_rows(t, *best);
      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (is_zero(a(i, c))) continue;
        Integer q = a(i, c) / a(t, c);
        a.add_row(i, t, Integer(-q));
        if (!is_zero(a(i, c))) residue = true;
      }
      if (!residue) break;
    }
    if (is_zero(a(t, c))) continue;
    if (sgn(a(t, c)) < 0) a.scale_row(t, Integer(-1));
    for (std::size_t i = 0; i < t; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(t, c).get_mpz_t());
      a.add_row(i, t, Integer(-q));
    }
    pivot_cols.push_back(c);
    ++t;
  }
  return a.rows_range(0, t);
}

/// Rank over a field by row reduction (no transforms).
template <ExactField T>
std::size_t field_rank(Matrix<T> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m; ++i)
      if (!is_zero(a(i, c))) {
        p = i;
        break;
      }
    if (!p) continue;
    a.swap_rows(r, *p);
    const T inv = T(1) / a(r, c);
    for (std::size_t i = r + 1; i < m; ++i)
      if (!is_zero(a(i, c))) a.add_row(i, r, T(-(a(i, c) * inv)));
    ++r;
  }
  return r;
}

/// Reduced row echelon form over a field; returns pivot columns.
template <ExactField T>
std::vector<std::size_t> reduce_row_echelon(Matrix<T>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m; ++i)
      if (!is_zero(a(i, c))) {
        p = i;
        break;
      }
    if (!p) continue;
    a.swap_rows(r, *p);
    if (!(a(r, c) == T(1))) a.scale_row(r, T(T(1) / a(r, c)));
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && !is_zero(a(i, c))) a.add_row(i, r, T(-a(i, c)));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right kernel {x : A x = 0} over a field, one vector per free column.
template <ExactField T>
std::vector<Vector<T>> kernel_basis(Matrix<T> a) {
  const std::size_t n = a.cols();
  auto pivots = reduce_row_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<T> x(n, T(0));
    x[f] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = T(-a(r, f));
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Integral kernel basis {x : A x = 0} from the right Smith transform.
inline std::vector<Vector<Integer>> integer_kernel_basis(const Matrix<Integer>& a) {
  auto nf = diagonalize(a, TransformRequest{false, false, true, false});
  std::vector<Vector<Integer>> basis;
  for (std::size_t j = nf.rank; j < a.cols(); ++j) basis.push_back(nf.v.column(j));
  return basis;
}

template <ExactScalar T>
std::size_t matrix_rank(const Matrix<T>& a) {
  if constexpr (scalar_traits<T>::is_field) {
    return field_rank(a);
  } else {
    return field_rank(convert_matrix<Rational>(a));
  }
}

}  // namespace widthlab
