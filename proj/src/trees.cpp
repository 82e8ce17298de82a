#include "brp/trees.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace brp {
namespace {

// Append-only interning table.  Node storage is chunked so that published
// nodes are never moved; readers only need an acquire load of size_, all
// mutation happens under mu_.
class TreeTable {
public:
  static TreeTable& instance() {
    static TreeTable table;
    return table;
  }

  TreeId intern(unsigned decoration, std::vector<TreeId> children) {
    Key key{decoration, children};
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    std::uint32_t id = size_.load(std::memory_order_relaxed);
    if (id >= kMaxChunks * kChunk)
      throw std::length_error("TreeTable: capacity exceeded");
    std::uint32_t c = id / kChunk;
    if (chunks_[c] == nullptr) chunks_[c] = new TreeNode[kChunk];
    TreeNode& node = chunks_[c][id % kChunk];
    node.decoration = decoration;
    node.children = std::move(children);
    node.order = 1;
    for (TreeId ch : node.children) node.order += get(ch).order;
    index_.emplace(std::move(key), id);
    size_.store(id + 1, std::memory_order_release);
    return id;
  }

  const TreeNode& get(TreeId id) const {
    if (id >= size_.load(std::memory_order_acquire))
      throw std::out_of_range("TreeTable: unknown tree id");
    return chunks_[id / kChunk][id % kChunk];
  }

private:
  static constexpr std::uint32_t kChunk = 1024;
  static constexpr std::uint32_t kMaxChunks = 4096;

  struct Key {
    unsigned decoration;
    std::vector<TreeId> children;
    bool operator==(const Key& o) const {
      return decoration == o.decoration && children == o.children;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull;
      auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
      };
      mix(k.decoration);
      for (TreeId c : k.children) mix(c + 1);
      return h;
    }
  };

  TreeTable() { chunks_.reset(new TreeNode*[kMaxChunks]()); }

  std::mutex mu_;
  std::unordered_map<Key, TreeId, KeyHash> index_;
  std::unique_ptr<TreeNode*[]> chunks_;
  std::atomic<std::uint32_t> size_{0};
};

}  // namespace

int tree_compare(TreeId a, TreeId b) {
  if (a == b) return 0;
  const TreeNode& na = tree_node(a);
  const TreeNode& nb = tree_node(b);
  if (na.order != nb.order) return na.order < nb.order ? -1 : 1;
  if (na.decoration != nb.decoration)
    return na.decoration < nb.decoration ? -1 : 1;
  std::size_t n = std::min(na.children.size(), nb.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = tree_compare(na.children[i], nb.children[i]);
    if (c != 0) return c;
  }
  if (na.children.size() != nb.children.size())
    return na.children.size() < nb.children.size() ? -1 : 1;
  return 0;
}

Forest Forest::single(TreeId t) {
  Forest f;
  f.mul(t);
  return f;
}

Forest Forest::from_instances(std::vector<TreeId> trees) {
  std::sort(trees.begin(), trees.end(), tree_less);
  Forest f;
  for (std::size_t i = 0; i < trees.size();) {
    std::size_t j = i;
    while (j < trees.size() && trees[j] == trees[i]) ++j;
    f.mul(trees[i], static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return f;
}

std::uint32_t Forest::multiplicity(TreeId t) const {
  for (const Item& it : items_)
    if (it.first == t) return it.second;
  return 0;
}

std::vector<TreeId> Forest::instances() const {
  std::vector<TreeId> out;
  out.reserve(count_);
  for (const Item& it : items_)
    for (std::uint32_t k = 0; k < it.second; ++k) out.push_back(it.first);
  return out;
}

Forest& Forest::mul(TreeId t, std::uint32_t mult) {
  if (mult == 0) return *this;
  auto pos = items_.begin();
  while (pos != items_.end() && tree_compare(pos->first, t) < 0) ++pos;
  if (pos != items_.end() && pos->first == t)
    pos->second += mult;
  else
    items_.insert(pos, {t, mult});
  order_ += tree_order(t) * mult;
  count_ += mult;
  return *this;
}

Forest Forest::times(const Forest& o) const {
  Forest out = *this;
  for (const Item& it : o.items_) out.mul(it.first, it.second);
  return out;
}

Forest Forest::erase_one(TreeId t) const {
  Forest out;
  bool found = false;
  for (const Item& it : items_) {
    std::uint32_t m = it.second;
    if (it.first == t) {
      found = true;
      --m;
    }
    if (m > 0) out.items_.push_back({it.first, m});
  }
  if (!found) throw std::invalid_argument("Forest::erase_one: tree not present");
  out.order_ = order_ - tree_order(t);
  out.count_ = count_ - 1;
  return out;
}

bool Forest::operator<(const Forest& o) const {
  if (order_ != o.order_) return order_ < o.order_;
  auto a = items_.begin();
  auto b = o.items_.begin();
  std::uint32_t ka = 0, kb = 0;  // consumed multiplicity of *a, *b
  while (a != items_.end() && b != o.items_.end()) {
    int c = tree_compare(a->first, b->first);
    if (c != 0) return c < 0;
    std::uint32_t ra = a->second - ka;
    std::uint32_t rb = b->second - kb;
    std::uint32_t step = std::min(ra, rb);
    ka += step;
    kb += step;
    if (ka == a->second) {
      ++a;
      ka = 0;
    }
    if (kb == b->second) {
      ++b;
      kb = 0;
    }
  }
  return a == items_.end() && b != o.items_.end();
}

std::size_t Forest::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const Item& it : items_) {
    mix(it.first + 1);
    mix(it.second);
  }
  return h;
}

TreeId make_leaf(unsigned decoration) {
  return TreeTable::instance().intern(decoration, {});
}

TreeId make_tree(unsigned decoration, const Forest& children) {
  return TreeTable::instance().intern(decoration, children.instances());
}

const TreeNode& tree_node(TreeId id) { return TreeTable::instance().get(id); }
unsigned tree_order(TreeId id) { return tree_node(id).order; }
unsigned tree_decoration(TreeId id) { return tree_node(id).decoration; }

Forest tree_children(TreeId id) {
  return Forest::from_instances(tree_node(id).children);
}

std::string tree_str(TreeId id) {
  const TreeNode& n = tree_node(id);
  std::string s = "[" + std::to_string(n.decoration + 1) + ":";
  for (TreeId c : n.children) s += tree_str(c);
  s += "]";
  return s;
}

std::string forest_str(const Forest& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const Forest::Item& it : f.items())
    for (std::uint32_t k = 0; k < it.second; ++k) s += tree_str(it.first);
  return s;
}

namespace {

TreeId parse_tree_at(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '[')
    throw std::invalid_argument("parse_tree: expected '[' in \"" + s + "\"");
  ++pos;
  std::size_t start = pos;
  while (pos < s.size() && s[pos] != ':') ++pos;
  if (pos == start || pos >= s.size())
    throw std::invalid_argument("parse_tree: expected decoration in \"" + s + "\"");
  unsigned dec = static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
  if (dec == 0) throw std::invalid_argument("parse_tree: decorations are 1-based");
  ++pos;  // ':'
  std::vector<TreeId> children;
  while (pos < s.size() && s[pos] == '[') children.push_back(parse_tree_at(s, pos));
  if (pos >= s.size() || s[pos] != ']')
    throw std::invalid_argument("parse_tree: expected ']' in \"" + s + "\"");
  ++pos;
  return make_tree(dec - 1, Forest::from_instances(std::move(children)));
}

}  // namespace

TreeId parse_tree(const std::string& s) {
  std::size_t pos = 0;
  TreeId t = parse_tree_at(s, pos);
  if (pos != s.size())
    throw std::invalid_argument("parse_tree: trailing characters in \"" + s + "\"");
  return t;
}

Forest parse_forest(const std::string& s) {
  if (s == "1") return Forest();
  std::size_t pos = 0;
  std::vector<TreeId> trees;
  while (pos < s.size()) trees.push_back(parse_tree_at(s, pos));
  return Forest::from_instances(std::move(trees));
}

namespace {

// All forests of exactly the given order over universe[from..], trees taken
// in nondecreasing universe position.
void forests_of_order(const std::vector<TreeId>& universe, std::size_t from,
                      unsigned order, Forest& acc, std::vector<Forest>& out) {
  if (order == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < universe.size(); ++i) {
    unsigned k = tree_order(universe[i]);
    if (k > order) continue;
    Forest next = acc;
    next.mul(universe[i]);
    forests_of_order(universe, i, order - k, next, out);
  }
}

}  // namespace

std::vector<TreeId> enumerate_trees(unsigned d, unsigned max_order) {
  if (d == 0) throw std::invalid_argument("enumerate_trees: d must be positive");
  std::vector<TreeId> trees;
  for (unsigned mu = 0; mu < d; ++mu) trees.push_back(make_leaf(mu));
  for (unsigned n = 2; n <= max_order; ++n) {
    // Children forests have order n-1 over trees of order <= n-1, which is
    // exactly the set built so far.
    std::vector<TreeId> smaller(trees.begin(), trees.end());
    std::vector<Forest> forests;
    Forest acc;
    forests_of_order(smaller, 0, n - 1, acc, forests);
    std::size_t begin = trees.size();
    for (const Forest& f : forests)
      for (unsigned mu = 0; mu < d; ++mu) trees.push_back(make_tree(mu, f));
    std::sort(trees.begin() + begin, trees.end(), tree_less);
    trees.erase(std::unique(trees.begin() + begin, trees.end()), trees.end());
  }
  std::sort(trees.begin(), trees.end(), tree_less);
  return trees;
}

std::vector<Forest> enumerate_forests(const std::vector<TreeId>& universe,
                                      unsigned max_order) {
  std::vector<TreeId> sorted = universe;
  std::sort(sorted.begin(), sorted.end(), tree_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Forest> out;
  for (unsigned n = 0; n <= max_order; ++n) {
    Forest acc;
    forests_of_order(sorted, 0, n, acc, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace brp
