#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "widthlab/complexes/chain_complex.hpp"
#include "widthlab/complexes/io.hpp"

namespace widthlab {

using NodeId = std::size_t;

/// A non-degenerate simplex of the cycle space, stored by its faces and top chain.
template <ExactScalar T>
struct CycleSimplex {
  std::size_t dim = 0;
  std::vector<NodeId> faces;  // k+1 ids of (k-1)-simplices; empty for k = 0
  Vector<T> top;              // ambient chain in degree shift + dim
  std::string label;
};

/// Formal sum of cycle-space simplices of one dimension. dim = -1 is the zero
/// chain below degree 0.
template <ExactScalar T>
struct CycleChain {
  std::ptrdiff_t dim = 0;
  std::map<NodeId, T> terms;

  void add(NodeId id, const T& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms.emplace(id, c);
    if (!fresh) {
      it->second = it->second + c;
      if (is_zero(it->second)) terms.erase(it);
    }
  }
  bool is_zero_chain() const { return terms.empty(); }
  bool operator==(const CycleChain&) const = default;
};

/// Interning arena for simplices of the cycle space of C_*(ambient) shifted by
/// `shift`. Equal (faces, top) data always yields the same id.
template <ExactScalar T>
class CycleSpace {
 public:
  CycleSpace(ComplexPtr ambient, std::size_t shift)
      : ambient_(std::move(ambient)), shift_(shift), chains_(chain_complex<T>(*ambient_)) {}

  const CellComplex& ambient() const { return *ambient_; }
  ComplexPtr ambient_ptr() const { return ambient_; }
  std::size_t shift() const { return shift_; }
  const ChainComplexRep<T>& chains() const { return chains_; }
  std::size_t size() const { return nodes_.size(); }
  const CycleSimplex<T>& node(NodeId id) const { return nodes_.at(id); }

  /// Chain-group size of D in degree d (0 outside the complex).
  std::size_t degree_size(std::ptrdiff_t d) const {
    return d < 0 ? 0 : ambient_->count(static_cast<std::size_t>(d));
  }

  Vector<T> boundary_of(std::size_t degree, const Vector<T>& chain) const {
    if (degree == 0) return {};
    return chains_.d(degree).apply(chain);
  }

  /// The unique simplex with the given faces and top chain.
  NodeId glue(const std::vector<NodeId>& faces, Vector<T> top, std::string label = {}) {
    const std::size_t k = faces.empty() ? 0 : faces.size() - 1;
    if (faces.size() == 1) throw GluingError("a 0-simplex has no faces; a k-simplex needs k+1 faces", 0);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i] >= nodes_.size()) throw GluingError("face " + std::to_string(i) + " is not a simplex of this cycle space", static_cast<std::ptrdiff_t>(i));
      if (nodes_[faces[i]].dim + 1 != k)
        throw GluingError("face " + std::to_string(i) + " has dimension " + std::to_string(nodes_[faces[i]].dim) + ", expected " + std::to_string(k - 1),
                          static_cast<std::ptrdiff_t>(i));
    }
    for (std::size_t j = 1; j < faces.size(); ++j)
      for (std::size_t i = 0; i < j && k >= 2; ++i)
        if (face(faces[j], i) != face(faces[i], j - 1))
          throw GluingError("faces " + std::to_string(i) + " and " + std::to_string(j) + " disagree on their shared face", static_cast<std::ptrdiff_t>(j));
    const std::size_t degree = shift_ + k;
    if (top.size() != degree_size(static_cast<std::ptrdiff_t>(degree)))
      throw GluingError("top chain has length " + std::to_string(top.size()) + ", expected " + std::to_string(degree_size(static_cast<std::ptrdiff_t>(degree))), -1);
    if (degree > 0) {
      Vector<T> residual = boundary_of(degree, top);
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const T sign = i % 2 ? T(-1) : T(1);
        add_scaled(residual, T(-sign), nodes_[faces[i]].top);
      }
      if (!is_zero_vector(residual)) {
        std::string r;
        for (std::size_t p = 0; p < residual.size(); ++p)
          if (!is_zero(residual[p])) r += (r.empty() ? "" : " ") + ambient_->describe(degree - 1, p) + ":" + to_string(residual[p]);
        throw GluingError(k == 0 ? "top chain of a 0-simplex is not a cycle (residual " + r + ")"
                                 : "boundary of the top chain differs from the alternating sum of face tops (residual " + r + ")",
                          -1, r);
      }
    }
    return intern(k, faces, std::move(top), std::move(label));
  }

  NodeId face(NodeId id, std::size_t i) const {
    const auto& n = nodes_.at(id);
    if (i >= n.faces.size()) throw InputError("face index " + std::to_string(i) + " out of range for a " + std::to_string(n.dim) + "-simplex");
    return n.faces[i];
  }

  /// s_j applied to a simplex: faces follow the simplicial identities, top is zero.
  NodeId degeneracy(std::size_t j, NodeId tau) {
    const std::size_t k = nodes_.at(tau).dim + 1;
    if (j >= k) throw InputError("degeneracy index out of range");
    std::vector<NodeId> faces(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == j || i == j + 1)
        faces[i] = tau;
      else if (i < j)
        faces[i] = degeneracy(j - 1, face(tau, i));
      else
        faces[i] = degeneracy(j, face(tau, i - 1));
    }
    return glue(faces, Vector<T>(degree_size(static_cast<std::ptrdiff_t>(shift_ + k)), T(0)));
  }

  /// True iff the simplex equals s_j of one of its faces.
  bool is_degenerate(NodeId id) const {
    const auto& n = nodes_.at(id);
    if (n.dim == 0 || !is_zero_vector(n.top)) return false;
    for (std::size_t j = 0; j < n.dim; ++j)
      if (n.faces[j] == n.faces[j + 1]) {
        auto s = find_degeneracy(j, n.faces[j]);
        if (s && *s == id) return true;
      }
    return false;
  }

  CycleChain<T> boundary(const CycleChain<T>& c) const {
    CycleChain<T> out;
    out.dim = c.dim - 1;
    if (c.dim <= 0) return out;
    for (const auto& [id, coeff] : c.terms) {
      const auto& n = nodes_.at(id);
      for (std::size_t i = 0; i < n.faces.size(); ++i)
        if (!is_degenerate(n.faces[i])) out.add(n.faces[i], i % 2 ? T(-coeff) : coeff);
    }
    return out;
  }

  /// Coefficient-weighted sum of top chains.
  Vector<T> ev(const CycleChain<T>& c) const {
    if (c.dim < 0) return {};
    Vector<T> out(degree_size(static_cast<std::ptrdiff_t>(shift_) + c.dim), T(0));
    for (const auto& [id, coeff] : c.terms) {
      if (static_cast<std::ptrdiff_t>(nodes_.at(id).dim) != c.dim) throw InputError("cycle chain mixes simplex dimensions");
      add_scaled(out, coeff, nodes_[id].top);
    }
    return out;
  }

  CycleChain<T> simplex_chain(NodeId id, const T& c = T(1)) const {
    CycleChain<T> out;
    out.dim = static_cast<std::ptrdiff_t>(nodes_.at(id).dim);
    out.add(id, c);
    return out;
  }

  /// All simplices reachable from the chain, faces before cofaces.
  std::vector<NodeId> closure(const CycleChain<T>& c) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeId> stack;
    for (const auto& [id, coeff] : c.terms) stack.push_back(id);
    while (!stack.empty()) {
      auto id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = true;
      for (auto f : nodes_[id].faces) stack.push_back(f);
    }
    std::vector<NodeId> out;
    for (NodeId id = 0; id < nodes_.size(); ++id)
      if (seen[id]) out.push_back(id);
    return out;  // interning order already lists faces first
  }

  /// Ambient reference, face DAG, and top chains of everything the chain touches.
  Json to_json(const CycleChain<T>& c) const {
    const auto ids = closure(c);
    std::map<NodeId, std::size_t> local;
    for (std::size_t p = 0; p < ids.size(); ++p) local[ids[p]] = p;
    Json simplices = Json::array();
    for (auto id : ids) {
      const auto& n = nodes_[id];
      Json faces = Json::array();
      for (auto f : n.faces) faces.push_back(std::to_string(local[f]));
      Json s{{"id", std::to_string(local[id])}, {"dim", std::to_string(n.dim)}, {"faces", faces},
             {"top", chain_to_json(*ambient_, shift_ + n.dim, n.top)}};
      if (!n.label.empty()) s["label"] = n.label;
      simplices.push_back(std::move(s));
    }
    Json terms = Json::object();
    for (const auto& [id, coeff] : c.terms) terms[std::to_string(local[id])] = to_string(coeff);
    return Json{{"ring", to_string(scalar_traits<T>::ring)},
                {"shift", std::to_string(shift_)},
                {"dim", std::to_string(c.dim)},
                {"ambient", complex_to_json(*ambient_)},
                {"simplices", simplices},
                {"chain", terms}};
  }

 private:
  using Key = std::tuple<std::size_t, std::vector<NodeId>, std::vector<std::pair<std::size_t, std::string>>>;

  static Key key_of(std::size_t k, const std::vector<NodeId>& faces, const Vector<T>& top) {
    std::vector<std::pair<std::size_t, std::string>> sparse;
    for (std::size_t p = 0; p < top.size(); ++p)
      if (!is_zero(top[p])) sparse.emplace_back(p, to_string(top[p]));
    return {k, faces, std::move(sparse)};
  }

  NodeId intern(std::size_t k, const std::vector<NodeId>& faces, Vector<T> top, std::string label) {
    auto key = key_of(k, faces, top);
    if (auto it = index_.find(key); it != index_.end()) {
      if (nodes_[it->second].label.empty()) nodes_[it->second].label = std::move(label);
      return it->second;
    }
    const NodeId id = nodes_.size();
    nodes_.push_back({k, faces, std::move(top), std::move(label)});
    index_.emplace(std::move(key), id);
    return id;
  }

  std::optional<NodeId> find_degeneracy(std::size_t j, NodeId tau) const {
    const std::size_t k = nodes_.at(tau).dim + 1;
    std::vector<NodeId> faces(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      std::optional<NodeId> f;
      if (i == j || i == j + 1)
        f = tau;
      else if (i < j)
        f = find_degeneracy(j - 1, face(tau, i));
      else
        f = find_degeneracy(j, face(tau, i - 1));
      if (!f) return std::nullopt;
      faces[i] = *f;
    }
    auto it = index_.find(key_of(k, faces, Vector<T>(degree_size(static_cast<std::ptrdiff_t>(shift_ + k)), T(0))));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ComplexPtr ambient_;
  std::size_t shift_;
  ChainComplexRep<T> chains_;
  std::vector<CycleSimplex<T>> nodes_;
  std::map<Key, NodeId> index_;
};

}  // namespace widthlab
