#include "brp/hopf.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace brp {
namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Forest, Forest>& p) const {
    return p.first.hash() * 1099511628211ull ^ p.second.hash();
  }
};

// Memo caches.  Guarded by a single mutex: the workloads are read-heavy
// with tiny critical sections, and correctness under concurrent sweeps
// matters more than parallel speedup of the algebra itself.
// The vector-valued memo tables are node-based maps and nothing is ever
// erased from them, so a reference to a stored value stays valid after the
// lock is released; only the lookups themselves need the lock.
std::mutex g_memo_mu;
std::unordered_map<TreeId, TensorVec> g_coproduct_memo;
std::unordered_map<Forest, TensorVec, ForestHash> g_forest_coproduct_memo;
std::unordered_map<std::pair<Forest, Forest>, ForestVec, PairHash> g_graft_memo;
std::unordered_map<TreeId, long long> g_symmetry_memo;
std::unordered_map<std::uint64_t, long long> g_tree_sym_memo;

long long tree_sym(TreeId a, TreeId b);

// Sum over all distinct arrangements of g's instances against f's
// instances of the product of tree pairings, times prod_h (g_h)! so that
// every bijection between instance sets is counted.
long long forest_sym(const Forest& f, const Forest& g) {
  if (f.tree_count() != g.tree_count()) return 0;
  if (f.order() != g.order()) return 0;
  std::vector<TreeId> fi = f.instances();
  std::vector<Forest::Item> pool(g.items().begin(), g.items().end());
  long long bij_per_arrangement = 1;
  for (const Forest::Item& it : pool)
    for (std::uint32_t k = 2; k <= it.second; ++k)
      bij_per_arrangement *= k;

  // Backtracking over which distinct g-tree is matched to fi[i].
  std::vector<std::uint32_t> left(pool.size());
  for (std::size_t j = 0; j < pool.size(); ++j) left[j] = pool[j].second;
  long long total = 0;
  auto rec = [&](auto&& self, std::size_t i, long long acc) -> void {
    if (acc == 0) return;
    if (i == fi.size()) {
      total += acc;
      return;
    }
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (left[j] == 0) continue;
      long long s = tree_sym(fi[i], pool[j].first);
      if (s == 0) continue;
      --left[j];
      self(self, i + 1, acc * s);
      ++left[j];
    }
  };
  rec(rec, 0, 1);
  return total * bij_per_arrangement;
}

long long tree_sym(TreeId a, TreeId b) {
  if (tree_decoration(a) != tree_decoration(b)) return 0;
  if (tree_order(a) != tree_order(b)) return 0;
  std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
                      std::max(a, b);
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_tree_sym_memo.find(key);
    if (it != g_tree_sym_memo.end()) return it->second;
  }
  long long v = forest_sym(tree_children(a), tree_children(b));
  std::lock_guard<std::mutex> lock(g_memo_mu);
  g_tree_sym_memo.emplace(key, v);
  return v;
}

TensorVec coproduct_of_tree(TreeId h) {
  const TreeNode& node = tree_node(h);
  TensorVec children;
  children.add({Forest(), Forest()}, 1);
  for (TreeId c : node.children) children = tensor_mul(children, coproduct(c));
  TensorVec out;
  out.add({Forest::single(h), Forest()}, 1);
  for (const auto& [key, coeff] : children.terms()) {
    TreeId regrown = make_tree(node.decoration, key.second);
    out.add({key.first, Forest::single(regrown)}, coeff);
  }
  return out;
}

// Enumerates maps theta: K -> I by a mixed-radix counter and accumulates
// the grafting terms for a fixed subset K of f_tilde's instances.
void graft_terms(const std::vector<TreeId>& used, const Forest& rest,
                 const std::vector<TreeId>& roots, ForestVec& out) {
  const std::size_t k = used.size();
  const std::size_t m = roots.size();
  std::vector<std::size_t> theta(k, 0);
  while (true) {
    // Collect the sub-forest sent to each root.
    std::vector<std::vector<TreeId>> assigned(m);
    for (std::size_t j = 0; j < k; ++j) assigned[theta[j]].push_back(used[j]);

    ForestVec term;
    term.add(rest, 1);
    for (std::size_t i = 0; i < m; ++i) {
      const TreeNode& root = tree_node(roots[i]);
      ForestVec grafted =
          graft(Forest::from_instances(assigned[i]), tree_children(roots[i]));
      ForestVec wrapped;
      for (const auto& [key, coeff] : grafted.terms())
        wrapped.add(Forest::single(make_tree(root.decoration, key)), coeff);
      term = forest_mul(term, wrapped);
    }
    out += term;

    std::size_t pos = 0;
    while (pos < k && ++theta[pos] == m) theta[pos++] = 0;
    if (pos == k) break;
    if (k == 0) break;
  }
}

}  // namespace

const TensorVec& coproduct(TreeId h) {
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_coproduct_memo.find(h);
    if (it != g_coproduct_memo.end()) return it->second;
  }
  TensorVec v = coproduct_of_tree(h);
  std::lock_guard<std::mutex> lock(g_memo_mu);
  return g_coproduct_memo.emplace(h, std::move(v)).first->second;
}

const TensorVec& coproduct(const Forest& f) {
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_forest_coproduct_memo.find(f);
    if (it != g_forest_coproduct_memo.end()) return it->second;
  }
  TensorVec out;
  out.add({Forest(), Forest()}, 1);
  for (TreeId h : f.instances()) out = tensor_mul(out, coproduct(h));
  std::lock_guard<std::mutex> lock(g_memo_mu);
  return g_forest_coproduct_memo.emplace(f, std::move(out)).first->second;
}

const ForestVec& graft(const Forest& f_tilde, const Forest& f) {
  std::pair<Forest, Forest> memo_key{f_tilde, f};
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_graft_memo.find(memo_key);
    if (it != g_graft_memo.end()) return it->second;
  }

  ForestVec out;
  if (f_tilde.empty()) {
    out.add(f, 1);
  } else if (f.empty()) {
    out.add(f_tilde, 1);
  } else {
    std::vector<TreeId> instances = f_tilde.instances();
    std::vector<TreeId> roots = f.instances();
    const std::size_t n = instances.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<TreeId> used;
      Forest rest;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1ull << j))
          used.push_back(instances[j]);
        else
          rest.mul(instances[j]);
      }
      graft_terms(used, rest, roots, out);
    }
  }

  std::lock_guard<std::mutex> lock(g_memo_mu);
  return g_graft_memo.emplace(std::move(memo_key), std::move(out))
      .first->second;
}

long long symmetry_factor(TreeId h) {
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_symmetry_memo.find(h);
    if (it != g_symmetry_memo.end()) return it->second;
  }
  long long v = symmetry_factor(tree_children(h));
  std::lock_guard<std::mutex> lock(g_memo_mu);
  g_symmetry_memo.emplace(h, v);
  return v;
}

long long symmetry_factor(const Forest& f) {
  long long s = 1;
  for (const Forest::Item& it : f.items()) {
    long long sh = symmetry_factor(it.first);
    for (std::uint32_t k = 1; k <= it.second; ++k) s *= k * sh;
  }
  return s;
}

long long multinomial(const Forest& f) {
  // Product of binomial coefficients C(n_1+..+n_i, n_i); exact at every
  // intermediate step.
  long long res = 1;
  long long n = 0;
  for (const Forest::Item& it : f.items()) {
    for (std::uint32_t j = 1; j <= it.second; ++j) {
      ++n;
      res = res * n / j;
    }
  }
  return res;
}

long long inner_sharp(const Forest& f, const Forest& g) {
  return f == g ? 1 : 0;
}

long long inner_sym(const Forest& f, const Forest& g) {
  return forest_sym(f, g);
}

long long inner_sym(TreeId a, TreeId b) { return tree_sym(a, b); }

long long pair_sharp(const ForestVec& v, const Forest& g) { return v.at(g); }

long long pair_sym(const ForestVec& v, const Forest& g) {
  long long total = 0;
  for (const auto& [key, coeff] : v.terms()) total += coeff * inner_sym(key, g);
  return total;
}

long long pair_sym(const Forest& f_tilde, const Forest& f,
                   const TensorVec& t) {
  long long total = 0;
  for (const auto& [key, coeff] : t.terms()) {
    if (key.first.order() != f_tilde.order() || key.second.order() != f.order())
      continue;
    long long left = inner_sym(f_tilde, key.first);
    if (left == 0) continue;
    total += coeff * left * inner_sym(f, key.second);
  }
  return total;
}

bool is_full(const std::vector<Forest>& A) {
  std::set<Forest> members(A.begin(), A.end());
  if (members.empty()) return false;
  for (const Forest& f : A)
    for (const Forest::Item& it : f.items())
      if (members.count(f.erase_one(it.first)) == 0) return false;
  return true;
}

std::vector<Forest> boundary_set(const std::vector<Forest>& A,
                                 const std::vector<TreeId>& universe) {
  std::set<Forest> members(A.begin(), A.end());
  if (members.empty())
    throw std::invalid_argument("boundary_set: A must be non-empty");
  for (const Forest& f : A)
    for (const Forest::Item& it : f.items())
      if (members.count(f.erase_one(it.first)) == 0)
        throw std::invalid_argument("boundary_set: A is not full, witness " +
                                    forest_str(f));

  std::set<Forest> result;
  for (const Forest& a : A) {
    for (TreeId h : universe) {
      Forest f = a;
      f.mul(h);
      if (f.empty() || members.count(f)) continue;
      if (members.count(f.erase_one(f.min_tree()))) result.insert(f);
    }
  }
  return std::vector<Forest>(result.begin(), result.end());
}

}  // namespace brp
