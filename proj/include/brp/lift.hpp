#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "brp/driver.hpp"
#include "brp/hopf.hpp"
#include "brp/trees.hpp"

namespace brp {

// Increment values of a lift: tree -> <X_{s,t}, h> for every tree of the
// working set.  The empty forest (counit) is implicit and always 1.
template <class T>
using TreeValues = std::map<TreeId, T, TreeIdLess>;

template <class T>
struct TreeIncrement {
  double s = 0.0;
  double t = 0.0;
  TreeValues<T> values;
};

// Product of tree values over a forest's instances; empty forest -> 1.
// Throws if the forest uses a tree outside the value table.
template <class T>
T forest_value(const Forest& f, const TreeValues<T>& values) {
  T out(1);
  for (const auto& [tree, mult] : f.items()) {
    auto it = values.find(tree);
    if (it == values.end())
      throw std::invalid_argument("forest_value: tree " + tree_str(tree) +
                                  " outside working set");
    for (std::uint32_t k = 0; k < mult; ++k) out = out * it->second;
  }
  return out;
}

// Exact lift of one linear piece with the given slope over elapsed time
// `length`.  On a linear piece every tree integral is a pure monomial:
//   <X_{a,a+r}, h> = c_h * r^{|h|},   c_{[f]_mu} = (prod_i c_{h_i}) * v_mu / |h|,
// which is the closed form of the recursive integration
//   <X_{a,r}, [f]_mu> = int_a^r prod_i <X_{a,u}, h_i> dX^mu(u).
// Runs in any scalar that supports +,*,/ and integer construction, so the
// same code produces exact rationals for rational drivers.
template <class T>
TreeValues<T> lift_segment(const std::vector<T>& slope, const T& length,
                           const std::vector<TreeId>& trees) {
  TreeValues<T> coeff;
  // Children are smaller, so a canonical order-sorted pass resolves them
  // first; fall back to recursion for robustness against unsorted input.
  struct Rec {
    const std::vector<T>& slope;
    TreeValues<T>& coeff;
    const T& coeff_of(TreeId h) {
      auto it = coeff.find(h);
      if (it != coeff.end()) return it->second;
      const TreeNode& node = tree_node(h);
      if (node.decoration >= slope.size())
        throw std::invalid_argument("lift_segment: decoration exceeds dimension");
      T c = slope[node.decoration];
      for (TreeId child : node.children) c = c * coeff_of(child);
      c = c / T(static_cast<int>(node.order));
      return coeff.emplace(h, c).first->second;
    }
  } rec{slope, coeff};
  TreeValues<T> out;
  for (TreeId h : trees) {
    T v = rec.coeff_of(h);
    for (unsigned p = 0; p < tree_order(h); ++p) v = v * length;
    out.emplace(h, v);
  }
  return out;
}

// Chen composition: given values on [s,u] and [u,t], returns values on
// [s,t] via <X_{s,t}, h> = sum over the coproduct of h of
// coeff * <X_{s,u}, left forest> * <X_{u,t}, right forest>.
// Both inputs must cover the same tree set.
template <class T>
TreeValues<T> chen_compose(const TreeValues<T>& left,
                           const TreeValues<T>& right) {
  if (left.size() != right.size())
    throw std::invalid_argument("chen_compose: mismatched tree sets");
  TreeValues<T> out;
  for (const auto& [h, unused] : left) {
    (void)unused;
    if (right.find(h) == right.end())
      throw std::invalid_argument("chen_compose: mismatched tree sets");
    T acc(0);
    for (const auto& [key, c] : coproduct(h).terms()) {
      T term = T(static_cast<int>(c)) * forest_value(key.first, left) *
               forest_value(key.second, right);
      acc = acc + term;
    }
    out.emplace(h, acc);
  }
  return out;
}

// Interval-carrying variant; rejects non-adjacent intervals.
template <class T>
TreeIncrement<T> chen_compose(const TreeIncrement<T>& left,
                              const TreeIncrement<T>& right) {
  if (!(std::abs(left.t - right.s) <= 1e-12))
    throw std::invalid_argument("chen_compose: intervals not adjacent");
  return TreeIncrement<T>{left.s, right.t,
                          chen_compose(left.values, right.values)};
}

// Canonical lift of a piecewise-linear driver on the working tree set
// (all decorated trees of order <= level over the driver's dimension).
//
// Exact per-segment monomial integrals are chained with Chen's relation
// through a binary-lifting table over the breakpoint grid, so a query
// costs O(log segments) compositions.  Off-grid endpoints split their
// straddling segment exactly.  Grid-aligned queries land in a cache that
// is safe for concurrent readers and writers; it grows with the number
// of distinct query pairs, so keep scan grids modest.
class BranchedLift {
 public:
  BranchedLift(PiecewiseLinearPath driver, unsigned level);

  const PiecewiseLinearPath& driver() const { return driver_; }
  unsigned level() const { return level_; }
  const std::vector<TreeId>& trees() const { return trees_; }

  // All tree values on [s,t]; requires 0 <= s <= t <= 1.
  TreeValues<double> increment(double s, double t) const;

  // Exact lift of [s,t] inside one linear piece; rejects intervals that
  // straddle a breakpoint.
  TreeValues<double> segment_increment(std::size_t segment, double s,
                                       double t) const;

  // Single tree / forest character value on [s,t].  The empty forest is
  // the counit and evaluates to 1 exactly; forests evaluate to the exact
  // product of their tree values.  Trees outside the working set are
  // rejected.
  double evaluate(double s, double t, TreeId h) const;
  double evaluate(double s, double t, const Forest& f) const;

 private:
  friend struct LiftKernelAccess;
  using Slot = std::vector<double>;  // values aligned with trees_

  struct ChenTerm {
    double coeff;
    std::vector<std::uint32_t> left;   // instance indices into trees_
    std::vector<std::uint32_t> right;  // instance indices into trees_
  };

  Slot compose(const Slot& left, const Slot& right) const;
  Slot segment_slot(std::size_t segment, double s, double t) const;
  Slot range_slot(double s, double t) const;
  const Slot& grid_slot(std::size_t i, std::size_t j) const;
  std::size_t index_of(TreeId h) const;

  PiecewiseLinearPath driver_;
  unsigned level_;
  std::vector<TreeId> trees_;
  std::unordered_map<TreeId, std::size_t> tree_index_;
  std::vector<std::vector<ChenTerm>> terms_;      // per tree index
  std::vector<std::vector<Slot>> table_;          // table_[l][i]: [t_i, t_{i+2^l}]
  mutable std::shared_mutex cache_mu_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<Slot>> cache_;
};

// Hoelder-type order norm [X:f] = sup_{s<t} |<X_{s,t}, f>| / (t-s)^{alpha |f|}
// over all pairs of the given scan grid, with the attaining pair.
struct OrderNormResult {
  double value = 0.0;
  double s = 0.0;
  double t = 0.0;
};

OrderNormResult order_norm(const BranchedLift& lift, const Forest& f,
                           double alpha, const std::vector<double>& grid,
                           bool parallel = true);

// Uniform scan grid with `cells` intervals on [0,1].
std::vector<double> uniform_grid(std::size_t cells);

// JSON diagnostics: every working-set tree's value on [s,t], keyed by the
// tree serialization.
std::string lift_diagnostics_json(const BranchedLift& lift, double s, double t);

}  // namespace brp
