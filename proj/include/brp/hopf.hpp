#pragma once

#include <vector>

#include "brp/forest_vector.hpp"
#include "brp/trees.hpp"

namespace brp {

// Connes-Kreimer coproduct.  Inductive rules:
//   coproduct(1) = 1 (x) 1
//   coproduct([f]_mu) = [f]_mu (x) 1 + (id (x) B+_mu) coproduct(f)
//   multiplicative over forest products.
// Every output key pair (a, b) satisfies |a| + |b| = |input|.
// Results are memoized; the returned references stay valid for the process
// lifetime.
const TensorVec& coproduct(TreeId h);
const TensorVec& coproduct(const Forest& f);

// Grafting sum f_tilde ↷ f: all ways of attaching the trees of f_tilde to
// nodes of f (unattached trees stay as forest factors).  Integer
// coefficients; every output forest has order |f_tilde| + |f|.  Memoized
// like coproduct.
const ForestVec& graft(const Forest& f_tilde, const Forest& f);

// Symmetry factor S: S(1) = 1, S(f) = prod_h (f_h)! S(h)^{f_h}, and for a
// single tree S([f]_mu) := S(f).
long long symmetry_factor(TreeId h);
long long symmetry_factor(const Forest& f);

// Multi(f) = (#f)! / prod_h (f_h)!.
long long multinomial(const Forest& f);

// Kronecker pairing <f, g> = 1{f == g}.
long long inner_sharp(const Forest& f, const Forest& g);

// Symmetrized pairing: <<1,1>> = 1; <<[f]_mu, [g]_nu>> = 1{mu==nu} <<f,g>>;
// and for forests the sum over bijections between tree factors.  Satisfies
// <<f, g>> = 1{f == g} S(f).
long long inner_sym(const Forest& f, const Forest& g);
long long inner_sym(TreeId a, TreeId b);

// Bilinear extensions.
long long pair_sharp(const ForestVec& v, const Forest& g);
long long pair_sym(const ForestVec& v, const Forest& g);
// <<f_tilde (x) f, t>> summed over a tensor vector t (component-wise sym
// pairing), as in the grafting adjunction.
long long pair_sym(const Forest& f_tilde, const Forest& f, const TensorVec& t);

// Downward closure check for a family of forests: every single-multiplicity
// decrement of a member must be a member.
bool is_full(const std::vector<Forest>& A);

// Boundary of a full set A relative to a tree universe: all forests f (over
// the universe) outside A ∪ {1} such that decrementing the multiplicity of
// the minimal tree of f lands in A.  Throws std::invalid_argument naming a
// violating forest when A is not full.
std::vector<Forest> boundary_set(const std::vector<Forest>& A,
                                 const std::vector<TreeId>& universe);

}  // namespace brp
