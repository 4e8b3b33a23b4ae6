#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/exactalg/normal_form.hpp"
#include "widthlab/exactalg/solve.hpp"

namespace widthlab {

/// Free case: exponent vector over the generators. Finite case: {basis index}.
using BasisKey = std::vector<unsigned>;
using AlgebraElement = std::map<BasisKey, Rational>;

struct AlgebraGenerator {
  std::string name;
  unsigned degree = 0;
};

inline void accumulate(AlgebraElement& e, const BasisKey& k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = e.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

inline AlgebraElement element_add(AlgebraElement a, const AlgebraElement& b, const Rational& c = 1) {
  for (const auto& [k, v] : b) accumulate(a, k, c * v);
  return a;
}

/// Graded-commutative Q-algebra with zero differential: either free on its
/// generators (exterior on odd, polynomial on even) or finite-dimensional with
/// an implicit unit and explicit products of basis elements.
class GradedAlgebra {
 public:
  enum class Kind { free, finite };

  static GradedAlgebra free(std::vector<AlgebraGenerator> gens) {
    for (const auto& g : gens)
      if (g.degree == 0) throw InputError("generator '" + g.name + "' needs positive degree");
    GradedAlgebra a;
    a.kind_ = Kind::free;
    a.gens_ = std::move(gens);
    return a;
  }

  /// Basis elements other than the unit, and products b_i·b_j for listed pairs.
  /// Unlisted pairs multiply to zero; the opposite order follows by graded commutativity.
  static GradedAlgebra finite(std::vector<AlgebraGenerator> basis, const std::map<std::pair<std::size_t, std::size_t>, AlgebraElement>& products) {
    for (const auto& g : basis)
      if (g.degree == 0) throw InputError("basis element '" + g.name + "' needs positive degree; the unit is implicit");
    GradedAlgebra a;
    a.kind_ = Kind::finite;
    a.gens_ = std::move(basis);
    const std::size_t n = a.gens_.size();
    a.table_.assign(n, std::vector<AlgebraElement>(n));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& [ij, prod] : products) {
      const auto [i, j] = ij;
      if (i >= n || j >= n) throw InputError("product refers to an unknown basis element");
      for (const auto& [k, c] : prod) {
        if (k.size() != 1 || k[0] >= n) throw InputError("product result refers to an unknown basis element");
        if (a.gens_[k[0]].degree != a.gens_[i].degree + a.gens_[j].degree)
          throw InputError("product " + a.gens_[i].name + "*" + a.gens_[j].name + " is not homogeneous of degree " +
                           std::to_string(a.gens_[i].degree + a.gens_[j].degree));
      }
      const int sign = (a.gens_[i].degree * a.gens_[j].degree) % 2 ? -1 : 1;
      AlgebraElement swapped;
      for (const auto& [k, c] : prod) accumulate(swapped, k, Rational(sign) * c);
      if (given[j][i] && a.table_[j][i] != swapped)
        throw InputError("products " + a.gens_[i].name + "*" + a.gens_[j].name + " and its reverse violate graded commutativity");
      if (given[i][j] && a.table_[i][j] != prod) throw InputError("product listed twice with different values");
      a.table_[i][j] = prod;
      a.table_[j][i] = swapped;
      given[i][j] = given[j][i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (a.gens_[i].degree % 2 && !a.table_[i][i].empty()) throw InputError("square of odd element '" + a.gens_[i].name + "' must vanish");
    // Associativity on basis triples.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (a.multiply(a.multiply(a.basis_element(i), a.basis_element(j)), a.basis_element(k)) !=
              a.multiply(a.basis_element(i), a.multiply(a.basis_element(j), a.basis_element(k))))
            throw InputError("products are not associative on " + a.gens_[i].name + ", " + a.gens_[j].name + ", " + a.gens_[k].name);
    return a;
  }

  Kind kind() const { return kind_; }
  const std::vector<AlgebraGenerator>& generators() const { return gens_; }
  std::size_t num_generators() const { return gens_.size(); }

  std::size_t generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    throw InputError("unknown generator '" + name + "'");
  }

  BasisKey unit_key() const { return kind_ == Kind::free ? BasisKey(gens_.size(), 0) : BasisKey{}; }
  AlgebraElement unit() const { return {{unit_key(), Rational(1)}}; }

  /// Generator i (free) or basis element i (finite).
  AlgebraElement basis_element(std::size_t i) const {
    if (i >= gens_.size()) throw InputError("generator index out of range");
    if (kind_ == Kind::finite) return {{BasisKey{static_cast<unsigned>(i)}, Rational(1)}};
    BasisKey k(gens_.size(), 0);
    k[i] = 1;
    return {{k, Rational(1)}};
  }

  unsigned degree_of(const BasisKey& k) const {
    if (kind_ == Kind::finite) return k.empty() ? 0 : gens_.at(k[0]).degree;
    unsigned d = 0;
    for (std::size_t i = 0; i < k.size(); ++i) d += k[i] * gens_[i].degree;
    return d;
  }

  /// Monomial basis in degree d, lexicographic in the exponent vectors (free) or by index (finite).
  std::vector<BasisKey> basis(unsigned d) const {
    std::vector<BasisKey> out;
    if (kind_ == Kind::finite) {
      if (d == 0) out.push_back({});
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree == d) out.push_back({static_cast<unsigned>(i)});
      return out;
    }
    BasisKey cur(gens_.size(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i == gens_.size()) {
        if (left == 0) out.push_back(cur);
        return;
      }
      const unsigned g = gens_[i].degree;
      const unsigned cap = g % 2 ? 1u : left / g;
      for (unsigned e = 0; e <= cap && e * g <= left; ++e) {
        cur[i] = e;
        rec(i + 1, left - e * g);
      }
      cur[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t dimension(unsigned d) const { return basis(d).size(); }

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        if (kind_ == Kind::finite) {
          if (ka.empty()) {
            accumulate(out, kb, ca * cb);
          } else if (kb.empty()) {
            accumulate(out, ka, ca * cb);
          } else {
            for (const auto& [k, c] : table_[ka[0]][kb[0]]) accumulate(out, k, ca * cb * c);
          }
          continue;
        }
        // Koszul sign: each odd factor of b moves past the odd factors of a with larger index.
        int sign = 1;
        BasisKey k(gens_.size(), 0);
        bool zero = false;
        for (std::size_t i = 0; i < gens_.size() && !zero; ++i) {
          k[i] = ka[i] + kb[i];
          if (gens_[i].degree % 2 && k[i] > 1) zero = true;
        }
        if (zero) continue;
        for (std::size_t j = 0; j < gens_.size(); ++j)
          if (gens_[j].degree % 2 && kb[j])
            for (std::size_t i = j + 1; i < gens_.size(); ++i)
              if (gens_[i].degree % 2 && ka[i]) sign = -sign;
        accumulate(out, k, Rational(sign) * ca * cb);
      }
    return out;
  }

  AlgebraElement power(const AlgebraElement& a, unsigned e) const {
    AlgebraElement out = unit();
    for (unsigned i = 0; i < e; ++i) out = multiply(out, a);
    return out;
  }

  /// Degree of a nonzero homogeneous element; throws on mixed degrees.
  std::optional<unsigned> homogeneous_degree(const AlgebraElement& e) const {
    std::optional<unsigned> d;
    for (const auto& [k, c] : e) {
      const unsigned kd = degree_of(k);
      if (d && *d != kd) throw InputError("element is not homogeneous");
      d = kd;
    }
    return d;
  }

  Vector<Rational> coordinates(const AlgebraElement& e, unsigned d) const {
    const auto b = basis(d);
    Vector<Rational> v(b.size(), Rational(0));
    for (const auto& [k, c] : e) {
      auto it = std::lower_bound(b.begin(), b.end(), k);
      if (it == b.end() || *it != k) throw InputError("element has a term outside degree " + std::to_string(d));
      v[static_cast<std::size_t>(it - b.begin())] = c;
    }
    return v;
  }

  std::string key_name(const BasisKey& k) const {
    if (kind_ == Kind::finite) return k.empty() ? "1" : gens_[k[0]].name;
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i]) s += (s.empty() ? "" : "*") + gens_[i].name + (k[i] > 1 ? "^" + std::to_string(k[i]) : "");
    return s.empty() ? "1" : s;
  }

  /// Inverse of key_name: "1", a basis name, or "x1*x2^3" for free algebras.
  BasisKey parse_key(const std::string& s) const {
    if (s == "1") return unit_key();
    if (kind_ == Kind::finite) return {static_cast<unsigned>(generator_index(s))};
    BasisKey k(gens_.size(), 0);
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto end = std::min(s.find('*', start), s.size());
      std::string factor = s.substr(start, end - start);
      unsigned e = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        const auto ex = factor.substr(caret + 1);
        if (ex.empty() || ex.find_first_not_of("0123456789") != std::string::npos) throw InputError("bad exponent in monomial '" + s + "'");
        e = static_cast<unsigned>(std::stoul(ex));
        factor = factor.substr(0, caret);
      }
      k[generator_index(factor)] += e;
      start = end + 1;
    }
    return k;
  }

  std::string element_to_string(const AlgebraElement& e) const {
    if (e.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : e) s += (s.empty() ? "" : " + ") + c.get_str() + "*" + key_name(k);
    return s;
  }

 private:
  Kind kind_ = Kind::free;
  std::vector<AlgebraGenerator> gens_;
  std::vector<std::vector<AlgebraElement>> table_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Degree-preserving algebra map given on generators (free source) or on the
/// whole basis (finite source, multiplicativity verified).
class AlgebraMorphism {
 public:
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<AlgebraElement> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->num_generators())
      throw InputError("morphism needs " + std::to_string(source_->num_generators()) + " generator images, got " + std::to_string(images_.size()));
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const auto d = target_->homogeneous_degree(images_[i]);
      if (d && *d != source_->generators()[i].degree)
        throw InputError("image of '" + source_->generators()[i].name + "' has degree " + std::to_string(*d) + ", expected " +
                         std::to_string(source_->generators()[i].degree));
      target_->coordinates(images_[i], source_->generators()[i].degree);
    }
    if (source_->kind() == GradedAlgebra::Kind::finite)
      for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = 0; j < images_.size(); ++j)
          if (apply(source_->multiply(source_->basis_element(i), source_->basis_element(j))) != target_->multiply(images_[i], images_[j]))
            throw InputError("morphism is not multiplicative on " + source_->generators()[i].name + "*" + source_->generators()[j].name);
  }

  static AlgebraMorphism zero(AlgebraPtr source, AlgebraPtr target) {
    std::vector<AlgebraElement> images(source->num_generators());
    return AlgebraMorphism(std::move(source), std::move(target), std::move(images));
  }

  static AlgebraMorphism identity(AlgebraPtr a) {
    std::vector<AlgebraElement> images;
    for (std::size_t i = 0; i < a->num_generators(); ++i) images.push_back(a->basis_element(i));
    return AlgebraMorphism(a, a, std::move(images));
  }

  const GradedAlgebra& source() const { return *source_; }
  const GradedAlgebra& target() const { return *target_; }
  AlgebraPtr source_ptr() const { return source_; }
  AlgebraPtr target_ptr() const { return target_; }
  const std::vector<AlgebraElement>& images() const { return images_; }

  AlgebraElement apply_key(const BasisKey& k) const {
    if (k == source_->unit_key()) return target_->unit();
    if (source_->kind() == GradedAlgebra::Kind::finite) return images_.at(k[0]);
    AlgebraElement out = target_->unit();
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i]) out = target_->multiply(out, target_->power(images_[i], k[i]));
    return out;
  }

  AlgebraElement apply(const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [k, c] : e) out = element_add(std::move(out), apply_key(k), c);
    return out;
  }

  /// Matrix of the degree-d component, columns indexed by the source basis.
  Matrix<Rational> matrix_in_degree(unsigned d) const {
    const auto src = source_->basis(d);
    Matrix<Rational> m(target_->dimension(d), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto col = target_->coordinates(apply_key(src[j]), d);
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    return m;
  }

  AlgebraMorphism then(const AlgebraMorphism& g) const {
    if (target_ != g.source_) throw InputError("morphisms do not compose");
    std::vector<AlgebraElement> images;
    for (const auto& im : images_) images.push_back(g.apply(im));
    return AlgebraMorphism(source_, g.target_, std::move(images));
  }

 private:
  AlgebraPtr source_, target_;
  std::vector<AlgebraElement> images_;
};

inline std::size_t rank_in_degree(const AlgebraMorphism& f, unsigned d) { return matrix_rank(f.matrix_in_degree(d)); }

/// Λ[x_1..x_n] on degree-p generators: the product of n odd spheres.
inline GradedAlgebra odd_sphere_power_model(unsigned p, std::size_t n, const std::string& prefix = "x") {
  if (p % 2 == 0) throw InputError("odd_sphere_power_model needs odd p; even spheres have no free model on a single generator");
  if (p < 3) throw InputError("odd_sphere_power_model needs p >= 3");
  std::vector<AlgebraGenerator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back({prefix + std::to_string(i + 1), p});
  return GradedAlgebra::free(std::move(gens));
}

}  // namespace widthlab
