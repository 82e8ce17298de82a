#include "brp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "brp/driver.hpp"
#include "brp/hopf.hpp"
#include "brp/parallel.hpp"
#include "brp/upsilon.hpp"

namespace brp {

namespace {

constexpr double kTimeTol = 1e-12;

std::vector<std::size_t> grid_window(const std::vector<double>& times,
                                     double a, double b) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] >= a - kTimeTol && times[i] <= b + kTimeTol) idx.push_back(i);
  return idx;
}

std::vector<std::pair<std::size_t, std::size_t>> window_pairs(
    const std::vector<std::size_t>& idx) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(idx.size() * (idx.size() - 1) / 2);
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = p + 1; q < idx.size(); ++q)
      pairs.emplace_back(idx[p], idx[q]);
  return pairs;
}

double pair_sup(const std::vector<double>& times,
                const std::vector<Vec>& values,
                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                double alpha, bool parallel) {
  if (pairs.empty()) return 0.0;
  auto [best, arg] = par::argmax(
      pairs.size(),
      [&](std::size_t p) {
        auto [i, j] = pairs[p];
        const double dt = times[j] - times[i];
        if (dt <= 0.0) return 0.0;
        return (values[j] - values[i]).norm() / std::pow(dt, alpha);
      },
      parallel);
  (void)arg;
  return best;
}

void check_alpha_m(double alpha, double m) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("bounds: alpha must lie in (0,1]");
  if (!(m > 1.0)) throw std::invalid_argument("bounds: m must exceed 1");
}

// Per-tree exponent of [X:h] in the growth estimates.  The bounded branch
// takes denom_m * alpha * |h|; the polynomial branch replaces
// denom_m * alpha by (m-1) alpha - gamma + 1.
double growth_exponent(unsigned order, double m, double alpha,
                       GrowthClass mode, double gamma, double denom_m) {
  if (mode == GrowthClass::bounded) return 1.0 / (denom_m * alpha * order);
  const double denom = (m - 1.0) * alpha - gamma + 1.0;
  return 1.0 / (denom * order);
}

void check_gamma(double m, double alpha, GrowthClass mode, double gamma) {
  if (mode == GrowthClass::bounded) return;
  if (!(gamma >= 1.0 && gamma < (m - 1.0) * alpha + 1.0))
    throw std::invalid_argument(
        "bounds: polynomial growth needs 1 <= gamma < (m-1) alpha + 1");
}

}  // namespace

double LiftNorms::value(TreeId h) const {
  auto it = by_tree.find(h);
  if (it == by_tree.end())
    throw std::invalid_argument("LiftNorms: tree outside the stored set");
  return it->second.value;
}

double LiftNorms::min_inverse_scale() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [h, res] : by_tree) {
    if (res.value <= 0.0) continue;
    const double order = static_cast<double>(tree_order(h));
    best = std::min(best, std::pow(res.value, -1.0 / (order * alpha)));
  }
  return best;
}

nlohmann::json LiftNorms::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& [h, res] : by_tree)
    trees.push_back({{"tree", tree_str(h)},
                     {"value", res.value},
                     {"at", {res.s, res.t}}});
  return {{"alpha", alpha}, {"level", level}, {"trees", trees}};
}

LiftNorms lift_norms(const BranchedLift& lift, unsigned level, double alpha,
                     std::size_t grid_cells, bool parallel) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("lift_norms: alpha must lie in (0,1]");
  if (level == 0 || level > lift.level())
    throw std::invalid_argument(
        "lift_norms: level must lie in [1, lift level]");
  if (grid_cells < 1) throw std::invalid_argument("lift_norms: empty grid");
  LiftNorms out;
  out.alpha = alpha;
  out.level = level;
  const auto grid = uniform_grid(grid_cells);
  for (TreeId h : lift.trees()) {
    if (tree_order(h) > level) continue;
    out.by_tree.emplace(h,
                        order_norm(lift, Forest::single(h), alpha, grid,
                                   parallel));
  }
  return out;
}

double theorem_rhs(double t, const LiftNorms& norms, double m, double alpha,
                   GrowthClass mode, double gamma) {
  check_alpha_m(alpha, m);
  check_gamma(m, alpha, mode, gamma);
  if (!(t > 0.0 && t <= 1.0))
    throw std::invalid_argument("theorem_rhs: t must lie in (0,1]");
  double best = std::pow(t, -1.0 / (m - 1.0));
  for (const auto& [h, res] : norms.by_tree) {
    if (res.value <= 0.0) continue;
    const double e = growth_exponent(tree_order(h), m, alpha, mode, gamma, m);
    best = std::max(best, std::pow(res.value, e));
  }
  return best;
}

double corollary_rhs(double t, double y0_norm, const LiftNorms& norms,
                     double m, double alpha, GrowthClass mode, double gamma) {
  check_alpha_m(alpha, m);
  check_gamma(m, alpha, mode, gamma);
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("corollary_rhs: t must lie in [0,1]");
  if (!(y0_norm >= 0.0))
    throw std::invalid_argument("corollary_rhs: |y0| must be nonnegative");
  double best =
      t == 0.0 ? y0_norm
               : std::min(std::pow(t, -1.0 / (m - 1.0)), y0_norm);
  for (const auto& [h, res] : norms.by_tree) {
    if (res.value <= 0.0) continue;
    const double e =
        growth_exponent(tree_order(h), m, alpha, mode, gamma, m - 1.0);
    best = std::max(best, std::pow(res.value, e));
  }
  return std::max(best, 1.0);
}

Horizons small_time_horizons(double y0_norm, const LiftNorms& norms, double m,
                             double alpha, GrowthClass mode, double gamma,
                             double eps1, double eps2) {
  check_alpha_m(alpha, m);
  check_gamma(m, alpha, mode, gamma);
  if (!(y0_norm >= 0.0))
    throw std::invalid_argument("small_time_horizons: |y0| negative");
  if (eps1 == 0.0) eps1 = 0.5 * std::pow(3.0, -m);
  if (!(eps1 > 0.0 && eps2 > 0.0))
    throw std::invalid_argument("small_time_horizons: eps must be positive");
  Horizons out;
  out.eps1 = eps1;
  out.eps2 = eps2;
  const double b0 = bracket(y0_norm);
  out.t1 = std::min(1.0, eps1 * std::pow(b0, -(m - 1.0)));
  double t2 = eps2 * norms.min_inverse_scale();
  if (mode == GrowthClass::polynomial)
    t2 *= std::pow(1.0 / b0, (gamma - 1.0) / alpha);
  out.t2 = std::min(1.0, t2);
  out.combined = std::min(out.t1, out.t2);
  return out;
}

double holder_seminorm(const std::vector<double>& times,
                       const std::vector<Vec>& values, double a, double b,
                       double alpha, bool parallel) {
  if (times.size() != values.size())
    throw std::invalid_argument("holder_seminorm: size mismatch");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_seminorm: alpha must lie in (0,1]");
  const auto idx = grid_window(times, a, b);
  return pair_sup(times, values, window_pairs(idx), alpha, parallel);
}

MwReport mw_rhs(const TreePath& Y, const TreePath& Z, double t, double L,
                double m, double alpha) {
  check_alpha_m(alpha, m);
  if (!(t > 0.0 && t <= 1.0))
    throw std::invalid_argument("mw_rhs: t must lie in (0,1]");
  if (!(L > 0.0 && L < t))
    throw std::invalid_argument("mw_rhs: window must satisfy 0 < L < t");

  // Pairs covered by some sliding window [s-L, s], s in [L, t]: exactly
  // those with t_j <= t and t_j - t_i <= L.
  auto sliding_sup = [&](const TreePath& P) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < P.times.size(); ++i) {
      if (P.times[i] > t + kTimeTol) break;
      for (std::size_t j = i + 1; j < P.times.size(); ++j) {
        if (P.times[j] > t + kTimeTol) break;
        if (P.times[j] - P.times[i] > L + kTimeTol) break;
        pairs.emplace_back(i, j);
      }
    }
    return pair_sup(P.times, P.unit, pairs, alpha, true);
  };

  double sup_y = 0.0;
  for (std::size_t i = 0; i < Y.times.size(); ++i) {
    if (Y.times[i] > t + kTimeTol) break;
    sup_y = std::max(sup_y, Y.unit[i].norm());
  }

  MwReport rep;
  rep.terms[0] = std::pow(t - L, -1.0 / (m - 1.0));
  rep.terms[1] =
      std::pow(sliding_sup(Z) * std::pow(L, alpha - 1.0), 1.0 / m);
  rep.terms[2] = std::pow(
      std::pow(L, alpha) * std::pow(sup_y, m - 1.0) * sliding_sup(Y),
      1.0 / m);
  rep.terms[3] =
      std::pow(L, alpha) * holder_seminorm(Y.times, Y.unit, t - L, t, alpha);
  rep.value = rep.terms[0];
  rep.arg_term = 1;
  for (int i = 1; i < 4; ++i)
    if (rep.terms[i] > rep.value) {
      rep.value = rep.terms[i];
      rep.arg_term = i + 1;
    }
  return rep;
}

InteriorReport interior_rhs(const TreePath& Y, double a, double b,
                            const BranchedLift& lift, const SigmaModel& model,
                            double m, double alpha, double eps,
                            std::size_t stride, std::size_t norm_cells) {
  check_alpha_m(alpha, m);
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("interior_rhs: need 0 <= a < b <= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("interior_rhs: eps <= 0");
  const unsigned N = Y.level;
  if (lift.level() < N)
    throw std::invalid_argument("interior_rhs: lift level below path level");
  if (model.max_order() < N)
    throw std::invalid_argument("interior_rhs: model order below path level");
  const auto idx = grid_window(Y.times, a, b);
  if (idx.size() < 2)
    throw std::invalid_argument(
        "interior_rhs: fewer than two grid times in the window");

  const double L = b - a;
  InteriorReport rep;

  const TreePath Z = z_path(Y, m, Y.unit.front());
  rep.lhs_z =
      std::pow(L, alpha) * holder_seminorm(Z.times, Z.unit, a, b, alpha);
  rep.lhs_y =
      std::pow(L, alpha) * holder_seminorm(Y.times, Y.unit, a, b, alpha);

  double sup_y = 0.0;
  for (std::size_t i : idx) sup_y = std::max(sup_y, Y.unit[i].norm());
  const double ym = std::pow(sup_y, m);

  const auto grid = uniform_grid(norm_cells);
  std::map<Forest, double> forest_norms;
  auto xnorm = [&](const Forest& f) {
    auto it = forest_norms.find(f);
    if (it != forest_norms.end()) return it->second;
    const double v = order_norm(lift, f, alpha, grid).value;
    forest_norms.emplace(f, v);
    return v;
  };

  const int d = model.driver_dim();
  double rhs = 0.0;
  for (const Forest& f : enumerate_forests(Y.tree_set, N - 1)) {
    const unsigned fo = f.order();
    const auto inner = enumerate_forests(Y.tree_set, N - 1 - fo);
    const auto bdry = boundary_set(inner, Y.tree_set);
    for (int mu = 0; mu < d; ++mu) {
      const double xn =
          xnorm(Forest::single(make_tree(static_cast<unsigned>(mu), f)));
      if (xn <= 0.0) continue;
      const double uf =
          u_quantity(model, f, nullptr, mu, Y, a, b, lift, stride);
      const double cond = std::pow(L, (fo + 1) * alpha) * xn * uf;
      rep.condition_max = std::max(rep.condition_max, cond);
      if (cond > eps * (1.0 + 1e-12)) rep.condition = false;

      double block = std::pow(L, (fo + 1) * alpha + 1.0) * uf * ym;
      double worst = 0.0;
      for (const Forest& fbar : bdry) {
        const double term =
            std::pow(L, (fbar.order() + fo + 1) * alpha) *
            u_quantity(model, f, &fbar, mu, Y, a, b, lift, stride) *
            xnorm(fbar);
        worst = std::max(worst, term);
      }
      rhs += xn * (block + worst);
    }
  }

  for (TreeId h : lift.trees()) {
    const unsigned ho = tree_order(h);
    if (ho > N) continue;
    const double xn = xnorm(Forest::single(h));
    if (xn <= 0.0) continue;
    double sup_ups = 0.0;
    for (std::size_t i : idx)
      sup_ups = std::max(sup_ups, upsilon(model, h, Y.unit[i]).norm());
    rhs += std::pow(L, ho * alpha) * xn * sup_ups;
  }

  rep.rhs = rhs;
  rep.ratio = rhs > 0.0 ? rep.lhs_z / rhs : 0.0;
  return rep;
}

BoundReport coming_down_sweep(const std::vector<double>& y0_list,
                              const std::vector<double>& t_list,
                              const BranchedLift& lift,
                              const SigmaModel& model, double m, double alpha,
                              std::size_t steps, GrowthClass mode,
                              double gamma, std::size_t norm_cells) {
  check_alpha_m(alpha, m);
  if (y0_list.empty() || t_list.empty())
    throw std::invalid_argument("coming_down_sweep: empty sweep lists");
  double lo = y0_list.front(), hi = y0_list.front();
  for (double v : y0_list) {
    if (!(v > 0.0))
      throw std::invalid_argument(
          "coming_down_sweep: |y0| magnitudes must be positive");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi < 1e4 * lo * (1.0 - 1e-9))
    throw std::invalid_argument(
        "coming_down_sweep: y0 list must span at least four decades");
  for (double t : t_list)
    if (!(t > 0.0 && t <= 1.0))
      throw std::invalid_argument("coming_down_sweep: t must lie in (0,1]");

  const unsigned level = level_from_alpha(alpha);
  const LiftNorms norms = lift_norms(lift, level, alpha, norm_cells);
  const int k = model.state_dim();
  const Vec dir = Vec::Ones(k) / std::sqrt(static_cast<double>(k));

  BoundReport rep;
  nlohmann::json runs = nlohmann::json::array();
  for (double mag : y0_list) {
    SolveConfig cfg;
    cfg.alpha = alpha;
    cfg.m = m;
    cfg.y0 = mag * dir;
    cfg.steps = steps;
    const TreePath Y = solve(cfg, model, lift);
    const Horizons hz =
        small_time_horizons(mag, norms, m, alpha, mode, gamma);
    runs.push_back({{"y0", mag}, {"t1", hz.t1}, {"t2", hz.t2}});
    for (double t : t_list) {
      const auto i = static_cast<std::size_t>(std::llround(
          t * static_cast<double>(steps)));
      BoundRow row;
      row.y0 = mag;
      row.t = Y.times[std::min(i, Y.times.size() - 1)];
      row.measured = Y.unit[std::min(i, Y.times.size() - 1)].norm();
      row.rhs = theorem_rhs(row.t, norms, m, alpha, mode, gamma);
      row.fitted = row.measured / row.rhs;
      rep.rows.push_back(row);
    }
  }

  rep.fitted_min = rep.rows.front().fitted;
  rep.fitted_max = rep.rows.front().fitted;
  for (const BoundRow& r : rep.rows) {
    rep.fitted_min = std::min(rep.fitted_min, r.fitted);
    rep.fitted_max = std::max(rep.fitted_max, r.fitted);
  }
  for (std::size_t j = 0; j < t_list.size(); ++j) {
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (std::size_t i = 0; i < y0_list.size(); ++i) {
      const double c = rep.rows[i * t_list.size() + j].fitted;
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
    if (cmin > 0.0) rep.spread = std::max(rep.spread, cmax / cmin);
  }
  rep.detail = {{"norms", norms.to_json()}, {"runs", runs}};
  return rep;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json jrows = nlohmann::json::array();
  for (const BoundRow& r : rows)
    jrows.push_back({{"y0", r.y0},
                     {"t", r.t},
                     {"measured", r.measured},
                     {"rhs", r.rhs},
                     {"fitted", r.fitted}});
  return {{"rows", jrows},
          {"fitted_min", fitted_min},
          {"fitted_max", fitted_max},
          {"spread", spread},
          {"detail", detail}};
}

SmallTimeReport small_time_check(const TreePath& Y, const Horizons& horizons) {
  SmallTimeReport rep;
  rep.window = horizons.combined;
  const double b0 = bracket(Y.unit.front());
  for (std::size_t i = 0; i < Y.times.size(); ++i) {
    if (Y.times[i] > rep.window + kTimeTol) break;
    const double ratio = bracket(Y.unit[i]) / b0;
    ++rep.checked;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 2.0 * (1.0 + 1e-12)) ++rep.violations;
  }
  return rep;
}

double TailReport::quantile(double p) const {
  if (sup_values.empty())
    throw std::logic_error("TailReport: no successful samples");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("TailReport: quantile level outside [0,1]");
  const auto n = sup_values.size();
  const auto i = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(n)));
  return sup_values[std::min(n - 1, i == 0 ? 0 : i - 1)];
}

std::vector<std::array<double, 2>> TailReport::survival(
    std::size_t points) const {
  if (sup_values.empty() || points < 2) return {};
  const double lo = sup_values.front(), hi = sup_values.back();
  std::vector<std::array<double, 2>> out;
  out.reserve(points);
  const auto n = static_cast<double>(sup_values.size());
  for (std::size_t k = 0; k < points; ++k) {
    const double x =
        lo + (hi - lo) * static_cast<double>(k) /
                 static_cast<double>(points - 1);
    const auto above = sup_values.end() -
                       std::upper_bound(sup_values.begin(), sup_values.end(),
                                        x);
    out.push_back({x, static_cast<double>(above) / n});
  }
  return out;
}

double TailReport::tail_theta() const {
  static constexpr double kLevels[] = {0.50, 0.60, 0.70, 0.80,
                                       0.90, 0.95, 0.98, 0.99};
  if (sup_values.empty()) return 0.0;
  std::vector<double> xs, ys;
  double last_x = -std::numeric_limits<double>::infinity();
  for (double p : kLevels) {
    const double q = quantile(p);
    if (!(q > 0.0)) continue;
    const double x = std::log(q);
    if (x <= last_x + 1e-12) continue;  // skip ties from discreteness
    xs.push_back(x);
    ys.push_back(std::log(-std::log(1.0 - p)));
    last_x = x;
  }
  if (xs.size() < 3) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

TailReport mc_tails(const TailConfig& config, const SigmaModel& model) {
  if (!(config.hurst > 0.25 && config.hurst < 1.0))
    throw std::invalid_argument("mc_tails: Hurst index must lie in (1/4, 1)");
  if (config.seeds < 1 ||
      (config.seeds < 1000 && !config.allow_small_samples))
    throw std::invalid_argument("mc_tails: at least 1000 seeds required");
  if (!(config.alpha > 0.0 && config.alpha < config.hurst))
    throw std::invalid_argument("mc_tails: need 0 < alpha < hurst");
  if (!(config.window_start >= 0.0 && config.window_start < 1.0))
    throw std::invalid_argument("mc_tails: window start outside [0,1)");
  if (config.grid < 2) throw std::invalid_argument("mc_tails: grid too small");

  // One serial probe run validates the structural configuration (levels,
  // dimensions, model order); inside the parallel sweep only per-seed
  // numerical failures are caught, and nothing may throw past the region.
  auto run_seed = [&](std::uint64_t seed) {
    const PiecewiseLinearPath path =
        sample_fbm(config.hurst, config.grid, seed, config.d);
    const BranchedLift lift(path, config.level);
    SolveConfig cfg;
    cfg.alpha = config.alpha;
    cfg.m = config.m;
    cfg.y0 = config.y0 * Vec::Ones(model.state_dim());
    cfg.steps = config.grid;
    cfg.level = config.level;
    const TreePath Y = solve(cfg, model, lift);
    double sup = 0.0;
    for (std::size_t i = 0; i < Y.times.size(); ++i)
      if (Y.times[i] >= config.window_start - kTimeTol)
        sup = std::max(sup, Y.unit[i].norm());
    return sup;
  };

  std::vector<double> results(config.seeds,
                              std::numeric_limits<double>::quiet_NaN());
  results[0] = run_seed(config.seed0);  // may throw: configuration errors
  par::for_each(config.seeds - 1, [&](std::size_t i) {
    try {
      results[i + 1] = run_seed(config.seed0 + i + 1);
    } catch (const SolverAbort&) {
      // NaN marks the excluded seed.
    }
  });

  TailReport rep;
  rep.sup_values.reserve(config.seeds);
  for (double v : results) {
    if (std::isnan(v))
      ++rep.failures;
    else
      rep.sup_values.push_back(v);
  }
  std::sort(rep.sup_values.begin(), rep.sup_values.end());
  return rep;
}

}  // namespace brp
