#pragma once

#include <optional>
#include <utility>

#include "widthlab/ratmodels/algebra.hpp"

namespace widthlab {

struct DegreeVanishing {
  unsigned degree = 0;
  std::size_t monomials = 0;  // source basis size in this degree
  std::size_t nonzero = 0;    // monomials with a nonzero image
};

struct ConnectedpReport {
  std::size_t n = 0;
  unsigned p = 0;
  std::size_t q = 0;
  std::size_t rank = 0;  // rank in degree p
  bool hypothesis_holds = false;
  std::vector<DegreeVanishing> degrees;  // l·p for l = n-q..n (or the top degree alone when unmet)
  /// Image of x_1⋯x_n, recorded when the hypothesis fails.
  std::optional<AlgebraElement> top_image;
  bool vanishes() const {
    for (const auto& d : degrees)
      if (d.nonzero) return false;
    return true;
  }
};

/// For φ out of Λ[x_1..x_n] with all |x_i| = p: when rank φ^p < n - q, checks that
/// every source monomial of degree ≥ (n-q)p maps to zero.
inline ConnectedpReport connectedp_check(const AlgebraMorphism& phi, std::size_t q) {
  const auto& src = phi.source();
  if (src.kind() != GradedAlgebra::Kind::free || src.num_generators() == 0)
    throw InputError("connectedp_check needs a free source algebra on degree-p generators");
  const unsigned p = src.generators().front().degree;
  for (const auto& g : src.generators())
    if (g.degree != p) throw InputError("connectedp_check needs all source generators in one degree");
  if (p % 2 == 0) throw InputError("connectedp_check needs odd generator degree");
  ConnectedpReport rep;
  rep.n = src.num_generators();
  rep.p = p;
  rep.q = q;
  rep.rank = rank_in_degree(phi, p);
  rep.hypothesis_holds = q < rep.n && rep.rank < rep.n - q;
  auto check = [&](unsigned d) {
    DegreeVanishing dv;
    dv.degree = d;
    for (const auto& k : src.basis(d)) {
      ++dv.monomials;
      if (!phi.apply_key(k).empty()) ++dv.nonzero;
    }
    rep.degrees.push_back(dv);
  };
  if (rep.hypothesis_holds) {
    for (std::size_t l = rep.n - q; l <= rep.n; ++l) check(static_cast<unsigned>(l * p));
  } else {
    BasisKey all(rep.n, 1);
    rep.top_image = phi.apply_key(all);
    check(static_cast<unsigned>(rep.n * p));
  }
  return rep;
}

struct DiophantineResult {
  unsigned p = 0, n = 0, a = 0;
  std::vector<std::pair<unsigned, unsigned>> solutions;  // (λ, μ), increasing λ
  bool in_range = false;                                  // n ≤ p - 2
  bool unique = false;
  /// Outside the range: "uniqueness failed" or "uniqueness held accidentally".
  std::string flag;
};

/// All (λ, μ) ≥ 0 with λ(p-1) + μp = np - a.
inline DiophantineResult diophantine_solutions(unsigned p, unsigned n, unsigned a) {
  if (p < 2 || n < 1 || a >= n) throw InputError("diophantine_solutions needs p >= 2, n >= 1 and 0 <= a < n");
  DiophantineResult r{p, n, a, {}, n + 2 <= p, false, {}};
  // Integer solutions are (a + kp, (n - a) - k(p - 1)); both nonnegative bounds k.
  const long kmin = -static_cast<long>(a / p);
  const long kmax = static_cast<long>((n - a) / (p - 1));
  for (long k = kmin; k <= kmax; ++k) {
    const long lambda = static_cast<long>(a) + k * static_cast<long>(p);
    const long mu = static_cast<long>(n - a) - k * static_cast<long>(p - 1);
    if (lambda >= 0 && mu >= 0) r.solutions.emplace_back(static_cast<unsigned>(lambda), static_cast<unsigned>(mu));
  }
  r.unique = r.solutions.size() == 1;
  if (r.in_range) {
    if (!r.unique || r.solutions.front() != std::pair<unsigned, unsigned>{a, n - a})
      throw InvariantViolation("diophantine uniqueness failed inside n <= p - 2");
  } else {
    r.flag = r.unique ? "uniqueness held accidentally" : "uniqueness failed";
  }
  return r;
}

struct MonomialDecomposition {
  BasisKey monomial;
  unsigned lambda = 0;  // degree-(p-1) factors
  unsigned mu = 0;      // degree-p factors
  bool image_zero = true;
};

struct FactorizationDegree {
  unsigned a = 0;
  unsigned degree = 0;
  std::vector<MonomialDecomposition> monomials;
  bool decomposition_ok = true;  // every monomial has (λ, μ) = (a, n - a)
  bool vanishes = true;
};

struct FactorizationReport {
  std::size_t rank = 0;  // rank of span(k_images)
  bool surjective_below = false;  // ι onto HK in degree p-1
  bool injective_at_p = false;    // ι injective in degree p
  bool factors = false;           // ι∘g = k on generators
  bool rank_preserved = false;    // rank (ι∘g)^p = rank k
  std::vector<FactorizationDegree> degrees;
  bool holds() const {
    bool ok = surjective_below && injective_at_p && factors && rank_preserved;
    for (const auto& d : degrees) ok = ok && d.decomposition_ok && d.vanishes;
    return ok;
  }
};

struct RationalFactorization {
  AlgebraPtr w;       // ΛW
  AlgebraPtr x;       // Λ[x_1..x_n]
  AlgebraMorphism g;  // Λ[x] → ΛW
  AlgebraMorphism iota;  // ΛW → HK
  FactorizationReport report;
};

/// Factors k: Λ[x_1..x_n] → HK through ΛW, W = HK^{p-1} ⊕ span(k(x_i)), and verifies
/// that ι kills every degree pn - a with 0 ≤ a ≤ q.
inline RationalFactorization rational_filling_factorization(AlgebraPtr hk, const std::vector<AlgebraElement>& k_images, unsigned p, std::size_t n,
                                                            std::size_t q) {
  if (p % 2 == 0 || p < 3) throw InputError("rational filling needs odd p >= 3");
  if (k_images.size() != n) throw InputError("expected " + std::to_string(n) + " images, got " + std::to_string(k_images.size()));
  if (n + 2 > p) throw HypothesisUnmet("hypothesis unmet: n <= p - 2 fails for n = " + std::to_string(n) + ", p = " + std::to_string(p));
  if (q >= n) throw HypothesisUnmet("hypothesis unmet: q < n fails");
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = hk->homogeneous_degree(k_images[i]);
    if (d && *d != p) throw InputError("degree mismatch: image " + std::to_string(i + 1) + " has degree " + std::to_string(*d) + ", expected " + std::to_string(p));
  }
  auto x = std::make_shared<const GradedAlgebra>(odd_sphere_power_model(p, n));
  const AlgebraMorphism k(x, hk, k_images);
  const std::size_t rank = rank_in_degree(k, p);
  if (rank >= n - q)
    throw HypothesisUnmet("hypothesis unmet: rank of the images in degree p is " + std::to_string(rank) + ", needs < n - q = " + std::to_string(n - q));

  // W generators: the HK basis in degree p-1, then a greedy basis of the images.
  std::vector<AlgebraGenerator> gens;
  std::vector<AlgebraElement> iota_images;
  for (const auto& b : hk->basis(p - 1)) {
    gens.push_back({"y[" + hk->key_name(b) + "]", p - 1});
    iota_images.push_back({{b, Rational(1)}});
  }
  const std::size_t below = gens.size();
  std::vector<std::size_t> chosen;
  {
    std::vector<Vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      auto trial = rows;
      trial.push_back(hk->coordinates(k_images[i], p));
      Matrix<Rational> m(trial.size(), trial.front().size());
      for (std::size_t r = 0; r < trial.size(); ++r)
        for (std::size_t c = 0; c < trial[r].size(); ++c) m(r, c) = trial[r][c];
      if (matrix_rank(m) == trial.size()) {
        rows = std::move(trial);
        chosen.push_back(i);
        gens.push_back({"z" + std::to_string(chosen.size()), p});
        iota_images.push_back(k_images[i]);
      }
    }
  }
  auto w = std::make_shared<const GradedAlgebra>(GradedAlgebra::free(gens));
  AlgebraMorphism iota(w, hk, iota_images);

  // g(x_i) = Σ c_j z_j with k(x_i) = Σ c_j k(x_{chosen j}).
  std::vector<AlgebraElement> g_images;
  const std::size_t dim_p = hk->dimension(p);
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement gi;
    if (!chosen.empty()) {
      std::vector<typename SparseMatrix<Rational>::Entry> entries;
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        const auto col = hk->coordinates(k_images[chosen[j]], p);
        for (std::size_t r = 0; r < dim_p; ++r)
          if (col[r] != 0) entries.push_back({r, j, col[r]});
      }
      const auto b = SparseMatrix<Rational>::from_entries(dim_p, chosen.size(), std::move(entries));
      const auto sol = solve_linear(b, hk->coordinates(k_images[i], p));
      if (!is_solution(sol)) throw InvariantViolation("image outside the span of the chosen basis");
      const auto& c = std::get<Vector<Rational>>(sol);
      for (std::size_t j = 0; j < chosen.size(); ++j) gi = element_add(std::move(gi), w->basis_element(below + j), c[j]);
    }
    g_images.push_back(std::move(gi));
  }
  AlgebraMorphism g(x, w, g_images);

  FactorizationReport rep;
  rep.rank = rank;
  rep.surjective_below = rank_in_degree(iota, p - 1) == hk->dimension(p - 1);
  rep.injective_at_p = rank_in_degree(iota, p) == w->dimension(p);
  const auto composite = g.then(iota);
  rep.factors = true;
  for (std::size_t i = 0; i < n; ++i) rep.factors = rep.factors && composite.images()[i] == k_images[i];
  rep.rank_preserved = rank_in_degree(composite, p) == rank;
  for (unsigned a = 0; a <= q; ++a) {
    FactorizationDegree fd;
    fd.a = a;
    fd.degree = static_cast<unsigned>(p * n - a);
    for (const auto& m : w->basis(fd.degree)) {
      MonomialDecomposition md;
      md.monomial = m;
      for (std::size_t i = 0; i < m.size(); ++i) (i < below ? md.lambda : md.mu) += m[i];
      md.image_zero = iota.apply_key(m).empty();
      fd.decomposition_ok = fd.decomposition_ok && md.lambda == a && md.mu == n - a;
      fd.vanishes = fd.vanishes && md.image_zero;
      fd.monomials.push_back(std::move(md));
    }
    rep.degrees.push_back(std::move(fd));
  }
  return {w, x, std::move(g), std::move(iota), std::move(rep)};
}

}  // namespace widthlab
