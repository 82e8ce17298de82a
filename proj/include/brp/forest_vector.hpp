#pragma once

#include <map>
#include <utility>

#include "brp/trees.hpp"

namespace brp {

// Sparse linear combination with deterministic (ordered) key iteration.
// Zero coefficients are never stored.
template <class K, class C>
class SparseVec {
public:
  using Terms = std::map<K, C>;

  SparseVec() = default;

  void add(const K& key, const C& coeff) {
    if (coeff == C{}) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == C{}) terms_.erase(it);
    }
  }

  C at(const K& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? C{} : it->second;
  }

  bool contains(const K& key) const { return terms_.count(key) != 0; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void clear() { terms_.clear(); }
  const Terms& terms() const { return terms_; }

  SparseVec& operator+=(const SparseVec& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    for (const auto& [k, c] : o.terms_) add(k, C{} - c);
    return *this;
  }
  SparseVec& operator*=(const C& s) {
    if (s == C{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const C& s) { return a *= s; }

  bool operator==(const SparseVec& o) const { return terms_ == o.terms_; }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }

private:
  Terms terms_;
};

// Coefficients of the Hopf-algebra operations are exact integers.
using ForestVec = SparseVec<Forest, long long>;
using TensorKey = std::pair<Forest, Forest>;
using TensorVec = SparseVec<TensorKey, long long>;

// Forest-product convolution: keys multiply as forests, coefficients as
// numbers.
template <class C>
SparseVec<Forest, C> forest_mul(const SparseVec<Forest, C>& a,
                                const SparseVec<Forest, C>& b) {
  SparseVec<Forest, C> out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) out.add(ka.times(kb), ca * cb);
  return out;
}

template <class C>
SparseVec<TensorKey, C> tensor_mul(const SparseVec<TensorKey, C>& a,
                                   const SparseVec<TensorKey, C>& b) {
  SparseVec<TensorKey, C> out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add({ka.first.times(kb.first), ka.second.times(kb.second)}, ca * cb);
  return out;
}

// Projection P_{<=n}: drops keys of forest order > n.
template <class C>
SparseVec<Forest, C> truncate(const SparseVec<Forest, C>& v, unsigned n) {
  SparseVec<Forest, C> out;
  for (const auto& [k, c] : v.terms())
    if (k.order() <= n) out.add(k, c);
  return out;
}

}  // namespace brp
