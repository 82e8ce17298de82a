#include "brp/lift.hpp"

#include <cmath>
#include <mutex>

#include <json.hpp>

#include "brp/parallel.hpp"

namespace brp {

namespace {

void check_interval(double s, double t) {
  if (s < 0.0 || t > 1.0) throw std::out_of_range("interval outside [0,1]");
  if (s > t) throw std::invalid_argument("interval endpoints out of order");
}

std::vector<std::uint32_t> instance_indices(
    const Forest& f, const std::unordered_map<TreeId, std::size_t>& index) {
  std::vector<std::uint32_t> out;
  for (TreeId h : f.instances())
    out.push_back(static_cast<std::uint32_t>(index.at(h)));
  return out;
}

}  // namespace

BranchedLift::BranchedLift(PiecewiseLinearPath driver, unsigned level)
    : driver_(std::move(driver)), level_(level) {
  if (level_ < 1) throw std::invalid_argument("lift level must be >= 1");
  trees_ = enumerate_trees(driver_.dim(), level_);
  for (std::size_t k = 0; k < trees_.size(); ++k) tree_index_[trees_[k]] = k;

  terms_.resize(trees_.size());
  for (std::size_t k = 0; k < trees_.size(); ++k) {
    for (const auto& [key, c] : coproduct(trees_[k]).terms()) {
      ChenTerm term;
      term.coeff = static_cast<double>(c);
      term.left = instance_indices(key.first, tree_index_);
      term.right = instance_indices(key.second, tree_index_);
      terms_[k].push_back(std::move(term));
    }
  }

  std::size_t n = driver_.segments();
  std::vector<Slot> cells;
  cells.reserve(n);
  std::vector<double> slope(driver_.dim());
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = driver_.slope(i);
    for (int j = 0; j < driver_.dim(); ++j) slope[j] = v[j];
    double dt = driver_.time(i + 1) - driver_.time(i);
    TreeValues<double> vals = lift_segment<double>(slope, dt, trees_);
    Slot slot(trees_.size());
    for (std::size_t k = 0; k < trees_.size(); ++k) slot[k] = vals.at(trees_[k]);
    cells.push_back(std::move(slot));
  }
  table_.push_back(std::move(cells));
  for (std::size_t l = 1; (std::size_t{1} << l) <= n; ++l) {
    std::size_t half = std::size_t{1} << (l - 1);
    std::size_t rows = n - (std::size_t{1} << l) + 1;
    std::vector<Slot> row;
    row.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i)
      row.push_back(compose(table_[l - 1][i], table_[l - 1][i + half]));
    table_.push_back(std::move(row));
  }
}

std::size_t BranchedLift::index_of(TreeId h) const {
  auto it = tree_index_.find(h);
  if (it == tree_index_.end())
    throw std::invalid_argument("tree " + tree_str(h) + " outside working set");
  return it->second;
}

BranchedLift::Slot BranchedLift::compose(const Slot& left,
                                         const Slot& right) const {
  Slot out(trees_.size());
  for (std::size_t k = 0; k < trees_.size(); ++k) {
    double acc = 0.0;
    for (const ChenTerm& term : terms_[k]) {
      double p = term.coeff;
      for (std::uint32_t i : term.left) p *= left[i];
      for (std::uint32_t i : term.right) p *= right[i];
      acc += p;
    }
    out[k] = acc;
  }
  return out;
}

BranchedLift::Slot BranchedLift::segment_slot(std::size_t segment, double s,
                                              double t) const {
  if (s < driver_.time(segment) - 1e-15 || t > driver_.time(segment + 1) + 1e-15)
    throw std::invalid_argument("segment lift straddles a breakpoint");
  Vec v = driver_.slope(segment);
  std::vector<double> slope(v.data(), v.data() + v.size());
  TreeValues<double> vals = lift_segment<double>(slope, t - s, trees_);
  Slot slot(trees_.size());
  for (std::size_t k = 0; k < trees_.size(); ++k) slot[k] = vals.at(trees_[k]);
  return slot;
}

const BranchedLift::Slot& BranchedLift::grid_slot(std::size_t i,
                                                  std::size_t j) const {
  std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
  {
    std::shared_lock lock(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  Slot acc;
  bool have = false;
  std::size_t k = i;
  for (std::size_t l = table_.size(); l-- > 0;) {
    std::size_t step = std::size_t{1} << l;
    if (k + step <= j) {
      acc = have ? compose(acc, table_[l][k]) : table_[l][k];
      have = true;
      k += step;
    }
  }
  if (!have) acc.assign(trees_.size(), 0.0);  // i == j
  std::unique_lock lock(cache_mu_);
  auto [it, inserted] = cache_.emplace(key, nullptr);
  if (inserted) it->second = std::make_unique<Slot>(std::move(acc));
  return *it->second;
}

BranchedLift::Slot BranchedLift::range_slot(double s, double t) const {
  check_interval(s, t);
  if (s == t) return Slot(trees_.size(), 0.0);
  std::size_t i = driver_.segment_index(s);
  std::size_t j = driver_.segment_index(t);
  if (i == j) return segment_slot(i, s, t);

  Slot acc;
  bool have = false;
  std::size_t a = i;
  if (s > driver_.time(i)) {
    acc = segment_slot(i, s, driver_.time(i + 1));
    have = true;
    a = i + 1;
  }
  if (j > a) {
    const Slot& mid = grid_slot(a, j);
    acc = have ? compose(acc, mid) : mid;
    have = true;
  }
  if (t > driver_.time(j)) {
    Slot tail = segment_slot(j, driver_.time(j), t);
    acc = have ? compose(acc, tail) : std::move(tail);
    have = true;
  }
  if (!have) return Slot(trees_.size(), 0.0);
  return acc;
}

TreeValues<double> BranchedLift::segment_increment(std::size_t segment,
                                                   double s, double t) const {
  if (segment >= driver_.segments())
    throw std::out_of_range("segment index out of range");
  check_interval(s, t);
  Slot slot = segment_slot(segment, s, t);
  TreeValues<double> out;
  for (std::size_t k = 0; k < trees_.size(); ++k) out.emplace(trees_[k], slot[k]);
  return out;
}

TreeValues<double> BranchedLift::increment(double s, double t) const {
  Slot slot = range_slot(s, t);
  TreeValues<double> out;
  for (std::size_t k = 0; k < trees_.size(); ++k) out.emplace(trees_[k], slot[k]);
  return out;
}

double BranchedLift::evaluate(double s, double t, TreeId h) const {
  std::size_t idx = index_of(h);
  return range_slot(s, t)[idx];
}

double BranchedLift::evaluate(double s, double t, const Forest& f) const {
  if (f.empty()) {
    check_interval(s, t);
    return 1.0;
  }
  Slot slot = range_slot(s, t);
  double out = 1.0;
  for (const auto& [tree, mult] : f.items()) {
    double v = slot[index_of(tree)];
    for (std::uint32_t k = 0; k < mult; ++k) out *= v;
  }
  return out;
}

OrderNormResult order_norm(const BranchedLift& lift, const Forest& f,
                           double alpha, const std::vector<double>& grid,
                           bool parallel) {
  if (grid.size() < 2)
    throw std::invalid_argument("order_norm needs at least two grid points");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(grid.size() * (grid.size() - 1) / 2);
  for (std::uint32_t i = 0; i < grid.size(); ++i)
    for (std::uint32_t j = i + 1; j < grid.size(); ++j) pairs.emplace_back(i, j);

  const double exponent = alpha * static_cast<double>(f.order());
  auto [value, at] = par::argmax(
      pairs.size(),
      [&](std::size_t p) {
        auto [i, j] = pairs[p];
        double ds = grid[j] - grid[i];
        return std::abs(lift.evaluate(grid[i], grid[j], f)) /
               std::pow(ds, exponent);
      },
      parallel);
  OrderNormResult out;
  if (at < pairs.size()) {
    out.value = value;
    out.s = grid[pairs[at].first];
    out.t = grid[pairs[at].second];
  }
  return out;
}

std::vector<double> uniform_grid(std::size_t cells) {
  if (cells < 1) throw std::invalid_argument("grid needs >= 1 cell");
  std::vector<double> g(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    g[i] = static_cast<double>(i) / static_cast<double>(cells);
  return g;
}

std::string lift_diagnostics_json(const BranchedLift& lift, double s,
                                  double t) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [tree, v] : lift.increment(s, t)) values[tree_str(tree)] = v;
  nlohmann::json out;
  out["s"] = s;
  out["t"] = t;
  out["level"] = lift.level();
  out["values"] = std::move(values);
  return out.dump(2);
}

}  // namespace brp

namespace brp::par {

namespace {
int g_threads = 0;
}

int thread_count() { return g_threads; }
void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }

}  // namespace brp::par
