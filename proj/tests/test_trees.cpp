#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "brp/trees.hpp"

using namespace brp;

namespace {

// Independent order oracle: length-prefixed preorder encoding
// (order, decoration, child encodings...); byte-lexicographic comparison of
// these encodings must coincide with the library's canonical order.
void encode(TreeId t, std::vector<std::uint32_t>& out) {
  const TreeNode& n = tree_node(t);
  out.push_back(n.order);
  out.push_back(n.decoration);
  for (TreeId c : n.children) encode(c, out);
}

int oracle_compare(TreeId a, TreeId b) {
  std::vector<std::uint32_t> ea, eb;
  encode(a, ea);
  encode(b, eb);
  if (ea < eb) return -1;
  if (eb < ea) return 1;
  return 0;
}

}  // namespace

TEST_CASE("canonical order on small trees") {
  TreeId l1 = make_leaf(0), l2 = make_leaf(1);
  CHECK(tree_compare(l1, l2) < 0);  // decoration tiebreak

  TreeId cherry = make_tree(0, Forest::single(l1));
  CHECK(tree_compare(l2, cherry) < 0);  // order-1 precedes order-2

  // [.. ]_1 vs [[.]_1]_1: fixed deterministic answer, checked against the
  // encoding oracle.
  Forest two_leaves = Forest::single(l1).mul(l1);
  TreeId wide = make_tree(0, two_leaves);
  TreeId tall = make_tree(0, Forest::single(cherry));
  CHECK(tree_compare(wide, tall) == oracle_compare(wide, tall));
  CHECK(tree_compare(wide, tall) < 0);
}

TEST_CASE("canonical order agrees with the encoding oracle exhaustively") {
  std::vector<TreeId> trees = enumerate_trees(2, 4);
  for (TreeId a : trees)
    for (TreeId b : trees) {
      int got = tree_compare(a, b);
      int want = oracle_compare(a, b);
      CHECK((got < 0) == (want < 0));
      CHECK((got == 0) == (want == 0));
    }
}

TEST_CASE("enumerate_trees counts") {
  CHECK(enumerate_trees(1, 1).size() == 1);
  // d=1: 1, 1, 2 trees per order.
  std::vector<TreeId> t3 = enumerate_trees(1, 3);
  CHECK(t3.size() == 4);
  CHECK(std::is_sorted(t3.begin(), t3.end(), tree_less));
  // d=2: 2 + 4 trees.
  CHECK(enumerate_trees(2, 2).size() == 6);
  // Each exactly once.
  std::vector<TreeId> t4 = enumerate_trees(2, 4);
  std::vector<TreeId> dedup = t4;
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
  CHECK(dedup.size() == t4.size());
  for (TreeId t : t4) CHECK(tree_order(t) <= 4);
}

TEST_CASE("interning gives O(1) equality") {
  TreeId a = parse_tree("[1:[2:][1:]]");
  TreeId b = parse_tree("[1:[1:][2:]]");  // same multiset of children
  CHECK(a == b);
  CHECK(tree_order(a) == 3);
}

TEST_CASE("debug serialization round-trips") {
  TreeId t = make_tree(0, Forest::single(make_leaf(1)));
  CHECK(tree_str(t) == "[1:[2:]]");
  CHECK(parse_tree("[1:[2:]]") == t);

  Forest f = Forest::single(make_leaf(0)).mul(make_leaf(0)).mul(t);
  CHECK(forest_str(f) == "[1:][1:][1:[2:]]");
  CHECK(parse_forest(forest_str(f)) == f);
  CHECK(forest_str(Forest()) == "1");
  CHECK(parse_forest("1") == Forest());
  CHECK_THROWS_AS(parse_tree("[0:]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("[1:"), std::invalid_argument);
}

TEST_CASE("forest bookkeeping") {
  TreeId l = make_leaf(0);
  TreeId c = make_tree(0, Forest::single(l));
  Forest f = Forest::from_instances({c, l, l});
  CHECK(f.order() == 4);
  CHECK(f.tree_count() == 3);
  CHECK(f.multiplicity(l) == 2);
  CHECK(f.min_tree() == l);
  CHECK(f.instances() == std::vector<TreeId>({l, l, c}));

  Forest g = f.erase_one(l);
  CHECK(g.multiplicity(l) == 1);
  CHECK(g.order() == 3);
  CHECK_THROWS_AS(g.erase_one(make_leaf(1)), std::invalid_argument);

  CHECK(Forest().times(f) == f);
  CHECK(Forest::single(l).times(Forest::single(c)) ==
        Forest::from_instances({l, c}));

  // Graded order: smaller total order first.
  CHECK(Forest::single(l) < f);
  CHECK(Forest() < Forest::single(l));
}

TEST_CASE("enumerate_forests over a universe") {
  std::vector<TreeId> universe = enumerate_trees(1, 2);  // ., [.]
  std::vector<Forest> fs = enumerate_forests(universe, 3);
  // 1; .; .., [.]; ..., .[.]  -> 6 forests
  CHECK(fs.size() == 6);
  CHECK(fs.front() == Forest());
  CHECK(std::is_sorted(fs.begin(), fs.end()));
  for (const Forest& f : fs) CHECK(f.order() <= 3);
}
