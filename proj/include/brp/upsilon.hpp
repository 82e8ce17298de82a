#pragma once

#include <map>
#include <vector>

#include "brp/forest_vector.hpp"
#include "brp/sigma.hpp"
#include "brp/trees.hpp"

namespace brp {

// State vectors indexed by trees, iterated in canonical order.
using TreeCoeffs = std::map<TreeId, Vec, TreeIdLess>;

// Symbolic contraction scheme of an elementary differential: node u of the
// tree is paired with the tensor d^{c(u)} sigma_{mu(u)} (c(u) = child
// count); evaluating the scheme bottom-up reproduces the recursion
//   Upsilon[[f]_mu](y) = D^{#f} sigma_mu(y)[(Upsilon[h])_{h in f}].
struct UpsilonContraction {
  struct Node {
    unsigned decoration = 0;
    std::vector<int> children;  // indices into nodes
  };
  std::vector<Node> nodes;  // node 0 is the root

  // Memoized scheme of a tree; reference valid for the process lifetime.
  static const UpsilonContraction& of(TreeId h);

  // Plain evaluation at y.
  Vec evaluate(const SigmaModel& m, const Vec& y) const;
  // Evaluation with extra directional slots appended at each node: node u
  // contracts d^{c(u)+|extra[u]|} sigma_{mu(u)} against its child values
  // and the vectors in extra[u].  Used by the Leibniz expansion.
  Vec evaluate(const SigmaModel& m, const Vec& y,
               const std::vector<std::vector<const Vec*>>& extra) const;
};

// Elementary differential by the direct recursion.  Preconditions: the
// needed sigma derivatives exist (|h| <= N for the tree form; for the
// (mu, f) form, the tree [f]_mu must have order <= N).  p-th derivatives
// additionally require p <= N - |h| + 1.
Vec upsilon(const SigmaModel& m, TreeId h, const Vec& y);
Vec upsilon(const SigmaModel& m, unsigned mu, const Forest& f, const Vec& y);

// Upsilon / S.
Vec bold_upsilon(const SigmaModel& m, TreeId h, const Vec& y);
Vec bold_upsilon(const SigmaModel& m, unsigned mu, const Forest& f,
                 const Vec& y);

// All bold differentials over a tree family at once.
TreeCoeffs bold_upsilon_vector(const SigmaModel& m,
                               const std::vector<TreeId>& trees, const Vec& y);

// Exact D^p Upsilon[h](y)[directions] by Leibniz expansion of the
// contraction scheme (p = directions.size()).
Vec upsilon_derivative(const SigmaModel& m, TreeId h, const Vec& y,
                       const std::vector<const Vec*>& directions);
Vec upsilon_derivative(const SigmaModel& m, unsigned mu, const Forest& f,
                       const Vec& y, const std::vector<const Vec*>& directions);

// Fitted constant of the growth lemma over a sample:
//   sup_y |D^p Upsilon[h](y)|_F / C_sigma^{|h|}                (bounded)
//   sup_y |D^p Upsilon[h](y)|_F / (C_sigma^{|h|} <y>^{(gamma-1)|h|+1-p})
// where |.|_F is the Frobenius norm over all basis direction tuples.
double growth_check(const SigmaModel& m, TreeId h, unsigned p,
                    const std::vector<Vec>& sample);

}  // namespace brp
