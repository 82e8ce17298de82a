#include "brp/upsilon.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "brp/hopf.hpp"

namespace brp {
namespace {

std::mutex g_contraction_mu;
std::unordered_map<TreeId, std::unique_ptr<UpsilonContraction>>
    g_contraction_memo;

int build_nodes(TreeId h, UpsilonContraction& c) {
  int self = static_cast<int>(c.nodes.size());
  c.nodes.emplace_back();
  c.nodes[self].decoration = tree_decoration(h);
  for (TreeId child : tree_node(h).children) {
    int ci = build_nodes(child, c);
    c.nodes[self].children.push_back(ci);
  }
  return self;
}

Vec eval_node(const UpsilonContraction& c, int u, const SigmaModel& m,
              const Vec& y,
              const std::vector<std::vector<const Vec*>>* extra,
              std::vector<Vec>& scratch) {
  const UpsilonContraction::Node& node = c.nodes[u];
  std::vector<const Vec*> dirs;
  dirs.reserve(node.children.size() +
               (extra ? (*extra)[u].size() : 0));
  for (int ci : node.children) {
    scratch[ci] = eval_node(c, ci, m, y, extra, scratch);
    dirs.push_back(&scratch[ci]);
  }
  if (extra)
    for (const Vec* v : (*extra)[u]) dirs.push_back(v);
  return m.apply(static_cast<int>(node.decoration), y, dirs);
}

void check_order(const SigmaModel& m, TreeId h) {
  if (tree_order(h) > m.max_order())
    throw std::invalid_argument(
        "upsilon: tree order " + std::to_string(tree_order(h)) +
        " exceeds the model truncation level " +
        std::to_string(m.max_order()));
}

}  // namespace

const UpsilonContraction& UpsilonContraction::of(TreeId h) {
  {
    std::lock_guard<std::mutex> lock(g_contraction_mu);
    auto it = g_contraction_memo.find(h);
    if (it != g_contraction_memo.end()) return *it->second;
  }
  auto built = std::make_unique<UpsilonContraction>();
  build_nodes(h, *built);
  std::lock_guard<std::mutex> lock(g_contraction_mu);
  return *g_contraction_memo.emplace(h, std::move(built)).first->second;
}

Vec UpsilonContraction::evaluate(const SigmaModel& m, const Vec& y) const {
  std::vector<Vec> scratch(nodes.size());
  return eval_node(*this, 0, m, y, nullptr, scratch);
}

Vec UpsilonContraction::evaluate(
    const SigmaModel& m, const Vec& y,
    const std::vector<std::vector<const Vec*>>& extra) const {
  std::vector<Vec> scratch(nodes.size());
  return eval_node(*this, 0, m, y, &extra, scratch);
}

Vec upsilon(const SigmaModel& m, TreeId h, const Vec& y) {
  check_order(m, h);
  std::vector<Vec> child_values;
  const TreeNode& node = tree_node(h);
  child_values.reserve(node.children.size());
  for (TreeId c : node.children) child_values.push_back(upsilon(m, c, y));
  std::vector<const Vec*> dirs;
  for (const Vec& v : child_values) dirs.push_back(&v);
  return m.apply(static_cast<int>(node.decoration), y, dirs);
}

Vec upsilon(const SigmaModel& m, unsigned mu, const Forest& f, const Vec& y) {
  return upsilon(m, make_tree(mu, f), y);
}

Vec bold_upsilon(const SigmaModel& m, TreeId h, const Vec& y) {
  return upsilon(m, h, y) / static_cast<double>(symmetry_factor(h));
}

Vec bold_upsilon(const SigmaModel& m, unsigned mu, const Forest& f,
                 const Vec& y) {
  return upsilon(m, mu, f, y) / static_cast<double>(symmetry_factor(f));
}

TreeCoeffs bold_upsilon_vector(const SigmaModel& m,
                               const std::vector<TreeId>& trees,
                               const Vec& y) {
  TreeCoeffs out;
  for (TreeId h : trees) out.emplace(h, bold_upsilon(m, h, y));
  return out;
}

Vec upsilon_derivative(const SigmaModel& m, TreeId h, const Vec& y,
                       const std::vector<const Vec*>& directions) {
  check_order(m, h);
  const unsigned p = static_cast<unsigned>(directions.size());
  if (p > m.max_order() - tree_order(h) + 1)
    throw std::invalid_argument(
        "upsilon_derivative: order p = " + std::to_string(p) +
        " out of range for |h| = " + std::to_string(tree_order(h)) +
        ", N = " + std::to_string(m.max_order()));
  const UpsilonContraction& c = UpsilonContraction::of(h);
  const std::size_t nn = c.nodes.size();
  if (p == 0) return c.evaluate(m, y);

  // Leibniz: sum over all assignments of the p directions to nodes.
  Vec out = Vec::Zero(m.state_dim());
  std::vector<std::size_t> target(p, 0);
  std::vector<std::vector<const Vec*>> extra(nn);
  while (true) {
    for (auto& e : extra) e.clear();
    for (unsigned l = 0; l < p; ++l)
      extra[target[l]].push_back(directions[l]);
    out += c.evaluate(m, y, extra);
    std::size_t pos = 0;
    while (pos < p && ++target[pos] == nn) target[pos++] = 0;
    if (pos == p) break;
  }
  return out;
}

Vec upsilon_derivative(const SigmaModel& m, unsigned mu, const Forest& f,
                       const Vec& y,
                       const std::vector<const Vec*>& directions) {
  return upsilon_derivative(m, make_tree(mu, f), y, directions);
}

double growth_check(const SigmaModel& m, TreeId h, unsigned p,
                    const std::vector<Vec>& sample) {
  const int k = m.state_dim();
  double denom_scale = std::pow(m.c_sigma(), static_cast<double>(tree_order(h)));
  double worst = 0.0;
  std::vector<int> idx(p, 0);
  for (const Vec& y : sample) {
    // Frobenius norm over all basis direction tuples.
    double sq = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    std::vector<Vec> basis(k, Vec());
    for (int j = 0; j < k; ++j) basis[j] = Vec::Unit(k, j);
    while (true) {
      std::vector<const Vec*> dirs;
      for (unsigned l = 0; l < p; ++l) dirs.push_back(&basis[idx[l]]);
      sq += upsilon_derivative(m, h, y, dirs).squaredNorm();
      std::size_t pos = 0;
      while (pos < p && ++idx[pos] == k) idx[pos++] = 0;
      if (pos == p) break;
    }
    double denom = denom_scale;
    if (m.growth() == GrowthClass::polynomial)
      denom *= std::pow(bracket(y),
                        (m.gamma() - 1.0) * tree_order(h) + 1.0 -
                            static_cast<double>(p));
    worst = std::max(worst, std::sqrt(sq) / denom);
  }
  return worst;
}

}  // namespace brp
