#pragma once

#include <optional>
#include <variant>

#include "widthlab/exactalg/gf2.hpp"
#include "widthlab/exactalg/normal_form.hpp"

namespace widthlab {

/// Row vector u with u^T B = 0 and u^T y = 1 for an unsolvable system B w = y.
template <ExactField T>
struct InfeasibilityCertificate {
  Vector<T> u;
};

template <ExactField T>
using SolveResult = std::variant<Vector<T>, InfeasibilityCertificate<T>>;

template <ExactField T>
bool is_solution(const SolveResult<T>& r) {
  return std::holds_alternative<Vector<T>>(r);
}

template <ExactField T>
bool verifies_solution(const SparseMatrix<T>& b, const Vector<T>& y, const Vector<T>& w) {
  return w.size() == b.cols() && b.apply(w) == y;
}

template <ExactField T>
bool verifies_certificate(const SparseMatrix<T>& b, const Vector<T>& y, const Vector<T>& u) {
  if (u.size() != b.rows() || y.size() != b.rows()) return false;
  if (!is_zero_vector(b.apply_left(u))) return false;
  const T uy = dot(u, y);
  if constexpr (std::is_same_v<T, Gf2>) {
    return uy == Gf2(1);
  } else {
    return !is_zero(uy);
  }
}

template <ExactField T>
bool verifies(const SparseMatrix<T>& b, const Vector<T>& y, const SolveResult<T>& r) {
  if (const auto* w = std::get_if<Vector<T>>(&r)) return verifies_solution(b, y, *w);
  return verifies_certificate(b, y, std::get<InfeasibilityCertificate<T>>(r).u);
}

namespace detail {

template <ExactField T>
SolveResult<T> field_solve(const SparseMatrix<T>& b, const Vector<T>& y) {
  const std::size_t m = b.rows(), n = b.cols();
  // [ B | y | I_m ], reduced with lowest-index pivots.
  Matrix<T> work(m, n + 1 + m);
  for (const auto& e : b.entries()) work(e.row, e.col) = e.value;
  for (std::size_t i = 0; i < m; ++i) {
    work(i, n) = y[i];
    work(i, n + 1 + i) = T(1);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m; ++i)
      if (!is_zero(work(i, c))) {
        p = i;
        break;
      }
    if (!p) continue;
    work.swap_rows(r, *p);
    if (!(work(r, c) == T(1))) work.scale_row(r, T(T(1) / work(r, c)));
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && !is_zero(work(i, c))) work.add_row(i, r, T(-work(i, c)));
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i) {
    if (is_zero(work(i, n))) continue;
    const T scale = T(1) / work(i, n);
    Vector<T> u(m);
    for (std::size_t k = 0; k < m; ++k) u[k] = work(i, n + 1 + k) * scale;
    return InfeasibilityCertificate<T>{std::move(u)};
  }
  Vector<T> w(n, T(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) w[pivots[k]] = work(k, n);
  return w;
}

}  // namespace detail

/// Total decision procedure for B w = y over Q or GF(2).
///
/// Exactly one of a verified solution or a verified certificate is returned;
/// a result that fails its own check raises InvariantViolation.
template <ExactField T>
SolveResult<T> solve_linear(const SparseMatrix<T>& b, const Vector<T>& y) {
  if (y.size() != b.rows()) throw InputError("solve_linear: right-hand side has wrong length");
  SolveResult<T> result;
  if constexpr (std::is_same_v<T, Gf2>) {
    auto out = detail::gf2_solve(BitMatrix::from_sparse(b), BitVector::from_vector(y));
    if (out.solution) {
      result = out.solution->to_vector();
    } else {
      result = InfeasibilityCertificate<Gf2>{out.certificate->to_vector()};
    }
  } else {
    result = detail::field_solve(b, y);
  }
  if (!verifies(b, y, result)) throw InvariantViolation("solve_linear produced an unverifiable result");
  return result;
}

/// Exact rank of an integer matrix over Z (Smith rank), Q, or GF(2) (entries reduced mod 2).
inline std::size_t rank_over(const SparseMatrix<Integer>& a, Ring ring) {
  switch (ring) {
    case Ring::Z: return diagonalize(a.to_dense()).rank;
    case Ring::Q: return field_rank(convert_matrix<Rational>(a.to_dense()));
    case Ring::GF2: {
      BitMatrix m(a.rows(), a.cols());
      for (const auto& e : a.entries())
        if (mpz_odd_p(e.value.get_mpz_t())) m.row(e.row).set(e.col);
      return m.rank();
    }
  }
  return 0;
}

}  // namespace widthlab
