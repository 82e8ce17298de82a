#include "brp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "brp/hopf.hpp"
#include "brp/parallel.hpp"

namespace brp {

namespace {

std::size_t locate_time(const std::vector<double>& times, double t,
                        const char* what) {
  auto it = std::lower_bound(times.begin(), times.end(), t - 1e-11);
  if (it == times.end() || std::abs(*it - t) > 1e-11)
    throw std::invalid_argument(std::string(what) +
                                ": time not on the path grid");
  return static_cast<std::size_t>(it - times.begin());
}

double int_factorial(unsigned p) {
  double f = 1.0;
  for (unsigned i = 2; i <= p; ++i) f *= static_cast<double>(i);
  return f;
}

std::vector<std::size_t> window_indices(const std::vector<double>& times,
                                        double a, double b,
                                        std::size_t stride) {
  if (stride < 1) stride = 1;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < times.size(); i += stride)
    if (times[i] >= a - 1e-12 && times[i] <= b + 1e-12) idx.push_back(i);
  if (idx.size() < 2)
    throw std::invalid_argument("window holds fewer than two grid times");
  return idx;
}

// s-side coefficients paired with their forests, for the Delta pairing.
Vec remainder_core(const std::vector<std::pair<Forest, Vec>>& coeffs_s,
                   Vec acc, const Forest& f, double s, double t,
                   const BranchedLift& lift) {
  for (const auto& [g, cg] : coeffs_s)
    for (const auto& [key, c] : coproduct(g).terms())
      if (key.second == f)
        acc -= static_cast<double>(c) * lift.evaluate(s, t, key.first) * cg;
  return acc;
}

std::vector<std::pair<Forest, Vec>> tree_path_terms(const TreePath& Y,
                                                    std::size_t i) {
  std::vector<std::pair<Forest, Vec>> out;
  out.emplace_back(Forest(), Y.unit[i]);
  for (TreeId h : Y.tree_set) {
    auto it = Y.coeffs[i].find(h);
    if (it != Y.coeffs[i].end()) out.emplace_back(Forest::single(h), it->second);
  }
  return out;
}

std::vector<std::pair<Forest, Vec>> forest_path_terms(const ForestPath& U,
                                                      std::size_t i) {
  std::vector<std::pair<Forest, Vec>> out;
  for (const auto& [g, cg] : U.values[i]) out.emplace_back(g, cg);
  return out;
}

template <class Path>
RemainderReport remainder_norm_impl(const Path& path, const Forest& f,
                                    double a, double b, double alpha,
                                    const BranchedLift& lift,
                                    std::size_t stride, bool parallel) {
  std::vector<std::size_t> idx = window_indices(path.times, a, b, stride);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < idx.size(); ++i)
    for (std::uint32_t j = i + 1; j < idx.size(); ++j) pairs.emplace_back(i, j);

  double exponent =
      (static_cast<double>(path.level) - static_cast<double>(f.order())) *
      alpha;
  auto [value, at] = par::argmax(
      pairs.size(),
      [&](std::size_t p) {
        auto [i, j] = pairs[p];
        double s = path.times[idx[i]];
        double t = path.times[idx[j]];
        return remainder(path, f, s, t, lift).norm() /
               std::pow(t - s, exponent);
      },
      parallel);

  RemainderReport rep;
  rep.f = f;
  rep.interval_start = a;
  rep.interval_end = b;
  rep.exponent = exponent;
  rep.norm = value;
  if (at < pairs.size()) {
    rep.at_s = path.times[idx[pairs[at].first]];
    rep.at_t = path.times[idx[pairs[at].second]];
  }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    rep.samples.push_back(
        remainder(path, f, path.times[idx[i]], path.times[idx[i + 1]], lift)
            .norm());
  return rep;
}

// zero direction, +/- axis directions, then 32 fixed unit directions.
std::vector<Vec> ball_directions(int k) {
  std::vector<Vec> dirs;
  dirs.push_back(Vec::Zero(k));
  for (int i = 0; i < k; ++i) {
    Vec e = Vec::Zero(k);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(0x5eedbea7u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < 32; ++r) {
    Vec v(k);
    for (int i = 0; i < k; ++i) v[i] = gauss(rng);
    double n = v.norm();
    dirs.push_back(n > 0 ? Vec((v / n).eval()) : Vec::Zero(k));
  }
  return dirs;
}

}  // namespace

std::size_t TreePath::index_of_time(double t) const {
  return locate_time(times, t, "tree path");
}

Vec TreePath::coefficient(std::size_t i, const Forest& f) const {
  if (f.empty()) return unit[i];
  if (f.tree_count() == 1) {
    auto it = coeffs[i].find(f.min_tree());
    if (it != coeffs[i].end()) return it->second;
  }
  return Vec::Zero(k);
}

std::size_t ForestPath::index_of_time(double t) const {
  return locate_time(times, t, "forest path");
}

Vec ForestPath::coefficient(std::size_t i, const Forest& f) const {
  auto it = values[i].find(f);
  if (it != values[i].end()) return it->second;
  return Vec::Zero(k);
}

Vec drift_flow(const Vec& y, double tau, double m) {
  if (m <= 1.0) throw std::invalid_argument("drift flow requires m > 1");
  if (tau < 0.0) throw std::invalid_argument("drift flow requires tau >= 0");
  double r = y.norm();
  if (r == 0.0 || tau == 0.0) return y;
  double scale =
      std::pow(1.0 + (m - 1.0) * tau * std::pow(r, m - 1.0), -1.0 / (m - 1.0));
  return y * scale;
}

TreePath solve(const SolveConfig& config, const SigmaModel& model,
               const BranchedLift& lift) {
  if (config.steps < 1) throw std::invalid_argument("solve: steps must be >= 1");
  if (config.drift && config.m <= 1.0)
    throw std::invalid_argument("solve: m must be > 1");
  if (config.y0.size() != model.state_dim())
    throw std::invalid_argument("solve: y0 dimension mismatch");
  if (model.driver_dim() != lift.driver().dim())
    throw std::invalid_argument("solve: sigma/driver dimension mismatch");

  unsigned N = config.level ? config.level
                            : level_from_alpha(config.alpha, config.level_cap);
  double na = static_cast<double>(N) * config.alpha;
  if (na > 1.0 + 1e-12 || (N + 1) * config.alpha <= 1.0 - 1e-12)
    throw std::invalid_argument("solve: level incompatible with alpha");
  if (lift.level() < N)
    throw std::invalid_argument("solve: lift level below the solver order");
  if (model.max_order() < N)
    throw std::invalid_argument("solve: sigma model differentiability too low");

  std::vector<TreeId> rough_trees;
  for (TreeId h : lift.trees())
    if (tree_order(h) <= N) rough_trees.push_back(h);
  std::vector<TreeId> coeff_trees;
  for (TreeId h : rough_trees)
    if (tree_order(h) <= N - 1) coeff_trees.push_back(h);

  TreePath path;
  path.level = N;
  path.k = model.state_dim();
  path.tree_set = coeff_trees;
  path.coherent = true;
  std::size_t n = config.steps;
  path.times.resize(n + 1);
  path.unit.resize(n + 1);
  path.coeffs.resize(n + 1);

  Vec y = config.y0;
  for (std::size_t i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(n);
    path.times[i] = t;
    path.unit[i] = y;
    path.coeffs[i] = bold_upsilon_vector(model, coeff_trees, y);
    if (i == n) break;

    double t1 = static_cast<double>(i + 1) / static_cast<double>(n);
    double half = 0.5 * (t1 - t);
    if (config.drift) y = drift_flow(y, half, config.m);
    TreeValues<double> x = lift.increment(t, t1);
    Vec incr = Vec::Zero(path.k);
    for (TreeId h : rough_trees) incr += bold_upsilon(model, h, y) * x.at(h);
    y += incr;
    if (config.drift) y = drift_flow(y, half, config.m);
    if (!y.allFinite() || y.norm() > 1e12)
      throw SolverAbort("solver state overflow at t = " + std::to_string(t1) +
                        " (|Y| = " + std::to_string(y.norm()) + ")");
  }
  return path;
}

ForestCoeffs compose_sigma(const SigmaModel& model, int mu, const TreePath& Y,
                           std::size_t i) {
  if (mu < 0 || mu >= model.driver_dim())
    throw std::invalid_argument("compose_sigma: component out of range");
  const Vec& y = Y.unit[i];
  unsigned N = Y.level;
  if (model.max_order() + 1 < N)
    throw std::invalid_argument("compose_sigma: derivative order unavailable");

  ForestCoeffs out;
  out[Forest()] = model.sigma(mu, y);
  for (const Forest& f : enumerate_forests(Y.tree_set, N - 1)) {
    if (f.empty()) continue;
    std::vector<TreeId> inst = f.instances();
    std::vector<Vec> hold;
    hold.reserve(inst.size());
    bool missing = false;
    for (TreeId h : inst) {
      auto it = Y.coeffs[i].find(h);
      if (it == Y.coeffs[i].end()) {
        missing = true;
        break;
      }
      hold.push_back(it->second);
    }
    if (missing) continue;
    std::vector<const Vec*> dirs;
    for (const Vec& v : hold) dirs.push_back(&v);
    double factor = static_cast<double>(multinomial(f)) /
                    int_factorial(static_cast<unsigned>(inst.size()));
    out[f] = factor * model.apply(mu, y, dirs);
  }
  return out;
}

ForestPath compose_sigma_path(const SigmaModel& model, int mu,
                              const TreePath& Y) {
  ForestPath U;
  U.times = Y.times;
  U.level = Y.level;
  U.k = Y.k;
  U.values.resize(Y.times.size());
  for (std::size_t i = 0; i < Y.times.size(); ++i)
    U.values[i] = compose_sigma(model, mu, Y, i);
  return U;
}

Vec xi(const ForestCoeffs& u_s, int mu, double s, double t,
       const BranchedLift& lift) {
  Vec acc;
  bool have = false;
  for (const auto& [f, coeff] : u_s) {
    double x = lift.evaluate(s, t, make_tree(static_cast<unsigned>(mu), f));
    if (!have) {
      acc = x * coeff;
      have = true;
    } else {
      acc += x * coeff;
    }
  }
  if (!have) throw std::invalid_argument("xi: empty forest expansion");
  return acc;
}

SewingResult sewing_integral(const std::function<ForestCoeffs(double)>& u,
                             int mu, double s, double t,
                             const BranchedLift& lift, unsigned levels) {
  if (s > t) throw std::invalid_argument("sewing: endpoints out of order");
  SewingResult res;
  if (s == t) {
    res.value = xi(u(s), mu, s, s, lift);  // zero vector of the right size
    return res;
  }
  Vec prev;
  for (unsigned L = 0; L <= levels; ++L) {
    std::size_t pieces = std::size_t{1} << L;
    Vec sum;
    for (std::size_t i = 0; i < pieces; ++i) {
      double a = s + (t - s) * static_cast<double>(i) /
                         static_cast<double>(pieces);
      double b = s + (t - s) * static_cast<double>(i + 1) /
                         static_cast<double>(pieces);
      Vec term = xi(u(a), mu, a, b, lift);
      sum = (i == 0) ? term : Vec(sum + term);
    }
    if (L > 0) res.level_diffs.push_back((sum - prev).norm());
    prev = sum;
  }
  res.value = prev;
  res.error_proxy = res.level_diffs.empty() ? 0.0 : res.level_diffs.back();
  double floor = 1e-13 * (1.0 + res.value.norm());
  for (std::size_t i = 1; i < res.level_diffs.size(); ++i)
    if (res.level_diffs[i] >
        std::max(2.0 * res.level_diffs[i - 1], floor))
      res.converged = false;
  return res;
}

Vec remainder(const TreePath& Y, const Forest& f, double s, double t,
              const BranchedLift& lift) {
  std::size_t js = Y.index_of_time(s);
  std::size_t jt = Y.index_of_time(t);
  return remainder_core(tree_path_terms(Y, js), Y.coefficient(jt, f), f, s, t,
                        lift);
}

Vec remainder(const ForestPath& U, const Forest& f, double s, double t,
              const BranchedLift& lift) {
  std::size_t js = U.index_of_time(s);
  std::size_t jt = U.index_of_time(t);
  return remainder_core(forest_path_terms(U, js), U.coefficient(jt, f), f, s,
                        t, lift);
}

RemainderReport remainder_norm(const TreePath& Y, const Forest& f, double a,
                               double b, double alpha,
                               const BranchedLift& lift, std::size_t stride,
                               bool parallel) {
  return remainder_norm_impl(Y, f, a, b, alpha, lift, stride, parallel);
}

RemainderReport remainder_norm(const ForestPath& U, const Forest& f, double a,
                               double b, double alpha,
                               const BranchedLift& lift, std::size_t stride,
                               bool parallel) {
  return remainder_norm_impl(U, f, a, b, alpha, lift, stride, parallel);
}

Vec remainder_formula_rhs(const Forest& f, int mu, const TreePath& Y, double s,
                          double t, const SigmaModel& model,
                          const BranchedLift& lift) {
  if (!Y.coherent)
    throw std::invalid_argument("remainder formula requires a coherent path");
  unsigned N = Y.level;
  if (f.order() > N - 1)
    throw std::invalid_argument("remainder formula: forest order too high");
  std::size_t js = Y.index_of_time(s);
  std::size_t jt = Y.index_of_time(t);
  const Vec& ys = Y.unit[js];

  Vec acc = bold_upsilon(model, static_cast<unsigned>(mu), f, Y.unit[jt]);
  unsigned budget = N - 1 - f.order();
  for (const Forest& g : enumerate_forests(Y.tree_set, budget)) {
    std::vector<TreeId> inst = g.instances();
    std::vector<Vec> hold;
    hold.reserve(inst.size());
    for (TreeId h : inst) hold.push_back(bold_upsilon(model, h, ys));
    std::vector<const Vec*> dirs;
    for (const Vec& v : hold) dirs.push_back(&v);
    Vec deriv =
        upsilon_derivative(model, static_cast<unsigned>(mu), f, ys, dirs) /
        static_cast<double>(symmetry_factor(f));
    double factor = static_cast<double>(multinomial(g)) /
                    int_factorial(static_cast<unsigned>(inst.size()));
    acc -= factor * lift.evaluate(s, t, g) * deriv;
  }
  return acc;
}

double e_bound(const SigmaModel& model, const TreePath& Y, double s, double t,
               const BranchedLift& lift) {
  std::size_t js = Y.index_of_time(s);
  const Vec& ys = Y.unit[js];
  TreeValues<double> x = lift.increment(s, t);
  double acc = 0.0;
  for (TreeId h : Y.tree_set)
    acc += upsilon(model, h, ys).norm() * std::abs(x.at(h));
  return acc;
}

double u_quantity(const SigmaModel& model, const Forest& f, const Forest* fbar,
                  int mu, const TreePath& Y, double a, double b,
                  const BranchedLift& lift, std::size_t stride,
                  bool parallel) {
  if (f.order() > Y.level - 1)
    throw std::invalid_argument("u_quantity: forest order too high");
  // Validate the derivative budget here: the scan below runs inside a
  // parallel region where a throw could not propagate.
  unsigned p = fbar ? fbar->tree_count() : 1u;
  if (p + f.order() > model.max_order())
    throw std::invalid_argument(
        "u_quantity: derivative order " + std::to_string(p) +
        " beyond the model budget for |f| = " + std::to_string(f.order()));
  std::vector<std::size_t> idx = window_indices(Y.times, a, b, stride);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < idx.size(); ++i)
    for (std::uint32_t j = i + 1; j < idx.size(); ++j) pairs.emplace_back(i, j);
  const std::vector<Vec> dirs = ball_directions(Y.k);

  auto [value, at] = par::argmax(
      pairs.size(),
      [&](std::size_t p) -> double {
        auto [i, j] = pairs[p];
        double s = Y.times[idx[i]];
        double t = Y.times[idx[j]];
        const Vec& ys = Y.unit[idx[i]];
        double e = e_bound(model, Y, s, t, lift);
        double best = 0.0;
        if (fbar == nullptr) {
          double radius = e + (Y.unit[idx[j]] - ys).norm();
          for (const Vec& dir : dirs) {
            Vec yp = ys + radius * dir;
            // Frobenius norm of the Jacobian D Upsilon_mu[f]
            double sq = 0.0;
            for (int c = 0; c < Y.k; ++c) {
              Vec ec = Vec::Zero(Y.k);
              ec[c] = 1.0;
              const Vec* dp = &ec;
              sq += upsilon_derivative(model, static_cast<unsigned>(mu), f,
                                       yp, {dp})
                        .squaredNorm();
            }
            best = std::max(best, std::sqrt(sq));
          }
        } else {
          std::vector<TreeId> inst = fbar->instances();
          std::vector<Vec> hold;
          hold.reserve(inst.size());
          for (TreeId h : inst) hold.push_back(upsilon(model, h, ys));
          std::vector<const Vec*> dptr;
          for (const Vec& v : hold) dptr.push_back(&v);
          for (const Vec& dir : dirs) {
            Vec yp = ys + e * dir;
            best = std::max(best, upsilon_derivative(model,
                                                     static_cast<unsigned>(mu),
                                                     f, yp, dptr)
                                      .norm());
          }
        }
        return best;
      },
      parallel);
  (void)at;
  return value;
}

std::vector<Vec> drift_prefix_integral(const TreePath& Y, double m) {
  if (Y.times.size() < 2) return {Vec::Zero(Y.k)};
  std::size_t n = Y.times.size() - 1;
  double h = Y.times[1] - Y.times[0];
  for (std::size_t i = 0; i + 1 < Y.times.size(); ++i)
    if (std::abs(Y.times[i + 1] - Y.times[i] - h) > 1e-12)
      throw std::invalid_argument("drift integral needs a uniform grid");

  std::vector<Vec> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double r = Y.unit[i].norm();
    g[i] = std::pow(r, m - 1.0) * Y.unit[i];
  }
  std::vector<Vec> I(n + 1, Vec::Zero(Y.k));
  std::size_t i = 0;
  while (i + 2 <= n) {
    I[i + 1] = I[i] + (h / 12.0) * (5.0 * g[i] + 8.0 * g[i + 1] - g[i + 2]);
    I[i + 2] = I[i] + (h / 3.0) * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
    i += 2;
  }
  if (i + 1 == n) {
    if (n == 1)  // two-point grid: trapezoid is all there is
      I[1] = I[0] + (h / 2.0) * (g[0] + g[1]);
    else  // odd tail: backward three-point rule
      I[n] = I[n - 1] +
             (h / 12.0) * (-g[n - 2] + 8.0 * g[n - 1] + 5.0 * g[n]);
  }
  return I;
}

TreePath z_path(const TreePath& Y, double m, const Vec& y0) {
  std::vector<Vec> I = drift_prefix_integral(Y, m);
  TreePath Z = Y;
  for (std::size_t i = 0; i < Z.unit.size(); ++i)
    Z.unit[i] = Y.unit[i] - y0 + I[i];
  Z.coherent = false;  // tree coefficients follow Y's unit, not Z's
  return Z;
}

void solution_to_csv(const TreePath& Y, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "time";
  for (int j = 1; j <= Y.k; ++j) out << ",y" << j;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < Y.times.size(); ++i) {
    out << Y.times[i];
    for (int j = 0; j < Y.k; ++j) out << ',' << Y.unit[i][j];
    out << '\n';
  }
}

nlohmann::json solution_sidecar(const TreePath& Y, const BranchedLift& lift,
                                double alpha, std::size_t snapshots,
                                std::size_t norm_stride) {
  nlohmann::json out;
  out["level"] = Y.level;
  out["state_dim"] = Y.k;
  out["grid_points"] = Y.times.size();
  out["coherent"] = Y.coherent;

  nlohmann::json snaps = nlohmann::json::array();
  std::size_t n = Y.times.size();
  std::size_t count = std::min(snapshots, n);
  for (std::size_t s = 0; s < count; ++s) {
    std::size_t i = (count == 1) ? 0 : s * (n - 1) / (count - 1);
    nlohmann::json snap;
    snap["t"] = Y.times[i];
    snap["y"] = std::vector<double>(Y.unit[i].data(),
                                    Y.unit[i].data() + Y.unit[i].size());
    nlohmann::json trees = nlohmann::json::object();
    for (const auto& [h, v] : Y.coeffs[i])
      trees[tree_str(h)] = std::vector<double>(v.data(), v.data() + v.size());
    snap["trees"] = std::move(trees);
    snaps.push_back(std::move(snap));
  }
  out["snapshots"] = std::move(snaps);

  nlohmann::json norms = nlohmann::json::array();
  std::vector<Forest> keys{Forest()};
  for (TreeId h : Y.tree_set) keys.push_back(Forest::single(h));
  for (const Forest& f : keys) {
    RemainderReport rep =
        remainder_norm(Y, f, 0.0, 1.0, alpha, lift, norm_stride);
    nlohmann::json row;
    row["f"] = forest_str(f);
    row["norm"] = rep.norm;
    row["exponent"] = rep.exponent;
    row["at"] = {rep.at_s, rep.at_t};
    norms.push_back(std::move(row));
  }
  out["remainder_norms"] = std::move(norms);
  return out;
}

}  // namespace brp
