#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace brp {

// Interned id of a decorated rooted tree.  Ids are process-local; equality
// of ids is equality of trees.
using TreeId = std::uint32_t;

// Node data of an interned tree.  Children are ids sorted in canonical
// order, repeated ids meaning repeated subtrees.  Decorations are 0-based
// internally; the debug serialization prints them 1-based.
struct TreeNode {
  unsigned decoration = 0;
  unsigned order = 1;  // number of nodes
  std::vector<TreeId> children;
};

// Canonical total order on trees: first by order, then by root decoration,
// then lexicographically by the (canonically sorted) child lists.
int tree_compare(TreeId a, TreeId b);
inline bool tree_less(TreeId a, TreeId b) { return tree_compare(a, b) < 0; }

// Comparator for ordered containers keyed by TreeId in canonical order.
struct TreeIdLess {
  bool operator()(TreeId a, TreeId b) const { return tree_less(a, b); }
};

// A forest: commutative monomial in trees, kept as (tree, multiplicity)
// pairs sorted by canonical tree order.  Default-constructed = empty
// forest (the unit of the forest algebra).
class Forest {
public:
  using Item = std::pair<TreeId, std::uint32_t>;

  Forest() = default;
  static Forest single(TreeId t);
  static Forest from_instances(std::vector<TreeId> trees);

  bool empty() const { return items_.empty(); }
  unsigned order() const { return order_; }
  unsigned tree_count() const { return count_; }
  const std::vector<Item>& items() const { return items_; }

  std::uint32_t multiplicity(TreeId t) const;
  // Minimal tree factor in canonical order.  Precondition: !empty().
  TreeId min_tree() const { return items_.front().first; }
  // Tree factors expanded with repetition, in canonical order.
  std::vector<TreeId> instances() const;

  Forest& mul(TreeId t, std::uint32_t mult = 1);
  Forest times(const Forest& o) const;
  // Forest with the multiplicity of t decremented.  Precondition: present.
  Forest erase_one(TreeId t) const;

  bool operator==(const Forest& o) const { return items_ == o.items_; }
  bool operator!=(const Forest& o) const { return !(*this == o); }
  // Graded canonical order: by |f|, then lexicographically on instances.
  bool operator<(const Forest& o) const;

  std::size_t hash() const;

private:
  std::vector<Item> items_;
  unsigned order_ = 0;
  unsigned count_ = 0;
};

struct ForestHash {
  std::size_t operator()(const Forest& f) const { return f.hash(); }
};

// Interning constructors.  make_tree is the grafting-onto-a-root operator
// B+_mu: it wraps a forest as the children of a new root.
TreeId make_leaf(unsigned decoration);
TreeId make_tree(unsigned decoration, const Forest& children);
const TreeNode& tree_node(TreeId id);
unsigned tree_order(TreeId id);
unsigned tree_decoration(TreeId id);
Forest tree_children(TreeId id);

// Debug serialization: "[1:[2:]]" is the tree with root decorated 1 and a
// single child decorated 2 (1-based decorations).  A forest is the
// concatenation of its tree factors in canonical order; the empty forest
// prints as "1".
std::string tree_str(TreeId id);
std::string forest_str(const Forest& f);
TreeId parse_tree(const std::string& s);
Forest parse_forest(const std::string& s);

// All trees with decorations in {0..d-1} and order <= max_order, in
// canonical order.
std::vector<TreeId> enumerate_trees(unsigned d, unsigned max_order);
// All forests (including the empty one) over the given tree universe with
// total order <= max_order, in canonical order.
std::vector<Forest> enumerate_forests(const std::vector<TreeId>& universe,
                                      unsigned max_order);

}  // namespace brp
