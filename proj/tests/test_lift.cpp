#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

#include <json.hpp>

#include "brp/driver.hpp"
#include "brp/hopf.hpp"
#include "brp/lift.hpp"
#include "brp/rational.hpp"
#include "brp/trees.hpp"

using namespace brp;

// ---------------------------------------------------------------------------
// Independent oracle: literal symbolic integration of the tree integrals
// against a piecewise-linear driver.  Values are kept as piecewise
// polynomials in u with explicit accumulation constants across
// breakpoints -- no monomial shortcut, no coproduct, no Chen relation --
// so agreement with the library genuinely cross-checks both the
// per-segment integrals and the cross-breakpoint chaining.
namespace oracle {

struct PwPoly {
  std::vector<double> pts;                // p+1 points
  std::vector<std::vector<double>> coef;  // coef[k][j] * (u - pts[k])^j

  double piece_end(std::size_t k) const {
    double x = pts[k + 1] - pts[k];
    double v = 0.0;
    for (std::size_t j = coef[k].size(); j-- > 0;) v = v * x + coef[k][j];
    return v;
  }
};

PwPoly one(const std::vector<double>& pts) {
  PwPoly p;
  p.pts = pts;
  p.coef.assign(pts.size() - 1, {1.0});
  return p;
}

PwPoly mul(const PwPoly& a, const PwPoly& b) {
  PwPoly p;
  p.pts = a.pts;
  p.coef.resize(a.coef.size());
  for (std::size_t k = 0; k < a.coef.size(); ++k) {
    const auto& x = a.coef[k];
    const auto& y = b.coef[k];
    std::vector<double> z(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    p.coef[k] = std::move(z);
  }
  return p;
}

// integral_s^u q(w) dX_mu(w) where X_mu has slope vmu[k] on piece k; the
// running value carries over each breakpoint as the next constant term.
PwPoly integrate(const PwPoly& q, const std::vector<double>& vmu) {
  PwPoly p;
  p.pts = q.pts;
  p.coef.resize(q.coef.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < q.coef.size(); ++k) {
    std::vector<double> z(q.coef[k].size() + 1, 0.0);
    z[0] = acc;
    for (std::size_t j = 0; j < q.coef[k].size(); ++j)
      z[j + 1] = vmu[k] * q.coef[k][j] / static_cast<double>(j + 1);
    p.coef[k] = std::move(z);
    acc = p.piece_end(k);
  }
  return p;
}

double tree_value(const PiecewiseLinearPath& path, double s, double t,
                  TreeId h) {
  if (s == t) return 0.0;
  std::vector<double> pts{s};
  for (std::size_t i = 0; i < path.breakpoints(); ++i) {
    double b = path.time(i);
    if (b > s && b < t) pts.push_back(b);
  }
  pts.push_back(t);
  std::size_t pieces = pts.size() - 1;

  std::function<PwPoly(TreeId)> rec = [&](TreeId tree) -> PwPoly {
    const TreeNode& node = tree_node(tree);
    PwPoly q = one(pts);
    for (TreeId child : node.children) q = mul(q, rec(child));
    std::vector<double> vmu(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      double mid = 0.5 * (pts[k] + pts[k + 1]);
      vmu[k] = path.slope(path.segment_index(mid))[node.decoration];
    }
    return integrate(q, vmu);
  };
  return rec(h).piece_end(pieces - 1);
}

}  // namespace oracle

namespace {

PiecewiseLinearPath line(double v) {
  return PiecewiseLinearPath({0.0, 1.0}, {Vec::Zero(1), Vec::Constant(1, v)});
}

PiecewiseLinearPath random_driver(std::mt19937_64& rng, int d,
                                  std::size_t segments) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-0.3, 0.3);
  std::vector<double> times(segments + 1);
  std::vector<Vec> values(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    double base = static_cast<double>(i) / static_cast<double>(segments);
    double jitter = (i == 0 || i == segments)
                        ? 0.0
                        : unif(rng) / static_cast<double>(segments);
    times[i] = base + jitter;
    Vec v(d);
    for (int j = 0; j < d; ++j) v[j] = (i == 0) ? 0.0 : gauss(rng);
    values[i] = v;
  }
  return PiecewiseLinearPath(std::move(times), std::move(values));
}

double chen_defect(const BranchedLift& lift, double s, double u, double t,
                   TreeId h) {
  TreeValues<double> left = lift.increment(s, u);
  TreeValues<double> right = lift.increment(u, t);
  double lhs = 0.0;
  for (const auto& [key, c] : coproduct(h).terms())
    lhs += static_cast<double>(c) * forest_value(key.first, left) *
           forest_value(key.second, right);
  double rhs = lift.evaluate(s, t, h);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace

TEST_CASE("piecewise linear path validation and interpolation") {
  PiecewiseLinearPath p({0.0, 0.25, 1.0},
                        {Vec::Zero(2), Vec::Constant(2, 1.0), Vec::Zero(2)});
  CHECK(p.dim() == 2);
  CHECK(p.segments() == 2);
  CHECK(p.value_at(0.125)[0] == doctest::Approx(0.5));
  CHECK(p.value_at(1.0)[1] == doctest::Approx(0.0));
  CHECK(p.slope(0)[0] == doctest::Approx(4.0));
  CHECK(p.slope(1)[0] == doctest::Approx(-1.0 / 0.75));
  CHECK(p.segment_index(0.0) == 0);
  CHECK(p.segment_index(0.25) == 1);
  CHECK(p.segment_index(1.0) == 1);
  CHECK_THROWS_AS(p.value_at(1.5), std::out_of_range);

  // grid must strictly increase and cover [0,1]
  CHECK_THROWS_AS(PiecewiseLinearPath({0.0, 0.5, 0.5, 1.0},
                                      std::vector<Vec>(4, Vec::Zero(1))),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PiecewiseLinearPath({0.0, 0.5}, std::vector<Vec>(2, Vec::Zero(1))),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PiecewiseLinearPath({0.2, 1.0}, std::vector<Vec>(2, Vec::Zero(1))),
      std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearPath({0.0, 1.0}, {Vec::Zero(1), Vec::Zero(2)}),
                  std::invalid_argument);
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(7);
  PiecewiseLinearPath p = random_driver(rng, 3, 5);
  auto file = std::filesystem::temp_directory_path() / "brp_driver_rt.csv";
  p.to_csv(file);
  PiecewiseLinearPath q = PiecewiseLinearPath::from_csv(file);
  REQUIRE(q.breakpoints() == p.breakpoints());
  CHECK(q.dim() == 3);
  for (std::size_t i = 0; i < p.breakpoints(); ++i) {
    CHECK(q.time(i) == p.time(i));  // 17-digit round trip is exact
    for (int j = 0; j < 3; ++j) CHECK(q.value(i)[j] == p.value(i)[j]);
  }
  std::filesystem::remove(file);
  CHECK_THROWS(PiecewiseLinearPath::from_csv("/nonexistent/driver.csv"));
}

TEST_CASE("segment lift closed forms for X(t) = t") {
  std::vector<TreeId> trees = enumerate_trees(1, 4);
  std::vector<double> slope{1.0};
  for (double t : {1.0, 0.7}) {
    TreeValues<double> v = lift_segment<double>(slope, t, trees);
    auto at = [&](const char* s) { return v.at(parse_tree(s)); };
    CHECK(at("[1:]") == doctest::Approx(t).epsilon(1e-14));
    CHECK(at("[1:[1:]]") == doctest::Approx(t * t / 2).epsilon(1e-14));
    CHECK(at("[1:[1:][1:]]") == doctest::Approx(t * t * t / 3).epsilon(1e-14));
    CHECK(at("[1:[1:[1:]]]") == doctest::Approx(t * t * t / 6).epsilon(1e-14));
    double t4 = t * t * t * t;
    CHECK(at("[1:[1:][1:][1:]]") == doctest::Approx(t4 / 4).epsilon(1e-14));
    CHECK(at("[1:[1:[1:]][1:]]") == doctest::Approx(t4 / 8).epsilon(1e-14));
    CHECK(at("[1:[1:[1:][1:]]]") == doctest::Approx(t4 / 12).epsilon(1e-14));
    CHECK(at("[1:[1:[1:[1:]]]]") == doctest::Approx(t4 / 24).epsilon(1e-14));
  }
}

TEST_CASE("segment lift is exact in rational arithmetic") {
  std::vector<TreeId> trees = enumerate_trees(1, 3);
  std::vector<Rational> slope{Rational(2, 3)};
  TreeValues<Rational> v = lift_segment<Rational>(slope, Rational(3, 5), trees);
  // c_h * L^{|h|} with c = v^{|h|} / (product of subtree orders)
  CHECK(v.at(parse_tree("[1:]")) == Rational(2, 5));
  CHECK(v.at(parse_tree("[1:[1:]]")) == Rational(2, 25));
  CHECK(v.at(parse_tree("[1:[1:[1:]]]")) == Rational(4, 375));
  CHECK(v.at(parse_tree("[1:[1:][1:]]")) == Rational(8, 375));

  // the same computation in doubles agrees to roundoff
  TreeValues<double> w =
      lift_segment<double>(std::vector<double>{2.0 / 3.0}, 0.6, trees);
  CHECK(w.at(parse_tree("[1:[1:[1:]]]")) ==
        doctest::Approx(4.0 / 375.0).epsilon(1e-14));
}

TEST_CASE("lift matches symbolic integration oracle") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    int d = (rep % 2) ? 2 : 1;
    PiecewiseLinearPath path = random_driver(rng, d, 3 + 2 * rep);
    BranchedLift lift(path, 4);
    std::vector<std::pair<double, double>> intervals = {
        {0.0, 1.0}, {0.0, 0.37}, {0.211, 0.93}};
    for (int k = 0; k < 3; ++k) {
      double a = unif(rng), b = unif(rng);
      intervals.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (auto [s, t] : intervals) {
      for (TreeId h : lift.trees()) {
        double want = oracle::tree_value(path, s, t, h);
        double got = lift.evaluate(s, t, h);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("ladder and bushy closed forms survive chaining") {
  // X(t) = t on a grid with several breakpoints: values must match the
  // single-segment closed forms t^n/n! (ladders) and t^n/n (bushes).
  PiecewiseLinearPath path({0.0, 0.3, 0.55, 0.8, 1.0},
                           {Vec::Zero(1), Vec::Constant(1, 0.3),
                            Vec::Constant(1, 0.55), Vec::Constant(1, 0.8),
                            Vec::Constant(1, 1.0)});
  BranchedLift lift(path, 4);
  TreeId ladder = make_leaf(0);
  double factorial = 1.0;
  for (unsigned n = 2; n <= 4; ++n) {
    ladder = make_tree(0, Forest::single(ladder));
    factorial *= static_cast<double>(n);
    CHECK(lift.evaluate(0.0, 1.0, ladder) ==
          doctest::Approx(1.0 / factorial).epsilon(1e-13));
  }
  TreeId bush3 = parse_tree("[1:[1:][1:][1:]]");
  CHECK(lift.evaluate(0.0, 1.0, bush3) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(lift.evaluate(0.0, 0.6, make_leaf(0)) ==
        doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("chen relation holds across random triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    int d = (rep % 2) ? 2 : 1;
    PiecewiseLinearPath path = random_driver(rng, d, 4 + rep);
    BranchedLift lift(path, 4);
    for (int k = 0; k < 20; ++k) {
      double a[3] = {unif(rng), unif(rng), unif(rng)};
      std::sort(a, a + 3);
      for (TreeId h : lift.trees())
        CHECK(chen_defect(lift, a[0], a[1], a[2], h) <= 1e-10);
    }
  }
}

TEST_CASE("chen composition identities") {
  std::vector<TreeId> trees = enumerate_trees(1, 4);
  std::vector<double> slope{1.0};

  SUBCASE("worked split of the order-2 tree") {
    TreeValues<double> half = lift_segment<double>(slope, 0.5, trees);
    TreeId cherry = parse_tree("[1:[1:]]");
    CHECK(half.at(cherry) == doctest::Approx(0.125));
    TreeValues<double> whole = chen_compose(half, half);
    // 1/8 + 1/2*1/2 + 1/8 = 1/2
    CHECK(whole.at(cherry) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(whole.at(parse_tree("[1:]")) == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("trivial increment is the identity") {
    TreeValues<double> v = lift_segment<double>(slope, 0.7, trees);
    TreeValues<double> zero = lift_segment<double>(slope, 0.0, trees);
    CHECK(chen_compose(zero, v) == v);
    CHECK(chen_compose(v, zero) == v);
  }

  SUBCASE("associativity on random smooth increments") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<TreeId> trees2 = enumerate_trees(2, 4);
    auto piece = [&]() {
      std::vector<double> sl{gauss(rng), gauss(rng)};
      return lift_segment<double>(sl, 0.3, trees2);
    };
    TreeValues<double> A = piece(), B = piece(), C = piece();
    TreeValues<double> left = chen_compose(chen_compose(A, B), C);
    TreeValues<double> right = chen_compose(A, chen_compose(B, C));
    for (const auto& [h, v] : left)
      CHECK(std::abs(v - right.at(h)) <= 1e-12 * std::max(1.0, std::abs(v)));
  }

  SUBCASE("interval bookkeeping rejects non-adjacent pieces") {
    TreeValues<double> v = lift_segment<double>(slope, 0.3, trees);
    TreeIncrement<double> a{0.0, 0.3, v};
    TreeIncrement<double> b{0.5, 1.0, v};
    CHECK_THROWS_AS(chen_compose(a, b), std::invalid_argument);
    TreeIncrement<double> c{0.3, 0.6, v};
    TreeIncrement<double> ac = chen_compose(a, c);
    CHECK(ac.s == 0.0);
    CHECK(ac.t == 0.6);
  }

  SUBCASE("mismatched tree sets are rejected") {
    TreeValues<double> big = lift_segment<double>(slope, 0.5, trees);
    TreeValues<double> small =
        lift_segment<double>(slope, 0.5, enumerate_trees(1, 2));
    CHECK_THROWS_AS(chen_compose(big, small), std::invalid_argument);
  }
}

TEST_CASE("character and unit properties of evaluate") {
  PiecewiseLinearPath path(
      {0.0, 1.0}, {Vec::Zero(2), (Vec(2) << 1.5, -0.5).finished()});
  BranchedLift lift(path, 4);

  CHECK(lift.evaluate(0.13, 0.77, Forest()) == 1.0);  // counit, exact
  CHECK(lift.evaluate(0.4, 0.4, make_leaf(0)) == 0.0);
  CHECK(lift.evaluate(0.4, 0.4, parse_tree("[1:[2:]]")) == 0.0);

  // product of two leaves with the same decoration on a linear path
  Forest ff = parse_forest("[1:][1:]");
  double leaf = lift.evaluate(0.0, 0.5, make_leaf(0));
  CHECK(leaf == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(lift.evaluate(0.0, 0.5, ff) == leaf * leaf);  // exact product

  Forest mixed = parse_forest("[1:][2:[1:]]");
  CHECK(lift.evaluate(0.1, 0.9, mixed) ==
        lift.evaluate(0.1, 0.9, parse_tree("[1:]")) *
            lift.evaluate(0.1, 0.9, parse_tree("[2:[1:]]")));

  // working-set and interval validation
  TreeId big = parse_tree("[1:[1:[1:[1:[1:]]]]]");  // order 5 > level 4
  CHECK_THROWS_AS(lift.evaluate(0.0, 1.0, big), std::invalid_argument);
  CHECK_THROWS_AS(lift.evaluate(-0.1, 0.5, make_leaf(0)), std::out_of_range);
  CHECK_THROWS_AS(lift.evaluate(0.7, 0.3, make_leaf(0)), std::invalid_argument);
  CHECK_THROWS_AS(BranchedLift(path, 0), std::invalid_argument);
}

TEST_CASE("segment_increment rejects straddling intervals") {
  PiecewiseLinearPath path({0.0, 0.5, 1.0},
                           {Vec::Zero(1), Vec::Constant(1, 1.0), Vec::Zero(1)});
  BranchedLift lift(path, 3);
  TreeValues<double> v = lift.segment_increment(0, 0.1, 0.4);
  CHECK(v.at(make_leaf(0)) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK_THROWS_AS(lift.segment_increment(0, 0.1, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(lift.segment_increment(2, 0.0, 0.1), std::out_of_range);
}

TEST_CASE("grid chaining agrees with map-based composition") {
  // Cross-check the flat fast path (binary lifting) against the generic
  // template composition chained segment by segment.
  std::mt19937_64 rng(13);
  PiecewiseLinearPath path = random_driver(rng, 2, 7);
  BranchedLift lift(path, 4);
  TreeValues<double> chained;
  bool first = true;
  for (std::size_t i = 0; i < path.segments(); ++i) {
    Vec sv = path.slope(i);
    std::vector<double> slope(sv.data(), sv.data() + sv.size());
    TreeValues<double> cell = lift_segment<double>(
        slope, path.time(i + 1) - path.time(i), lift.trees());
    chained = first ? cell : chen_compose(chained, cell);
    first = false;
  }
  TreeValues<double> direct = lift.increment(0.0, 1.0);
  for (const auto& [h, v] : direct)
    CHECK(std::abs(v - chained.at(h)) <= 1e-13 * std::max(1.0, std::abs(v)));

  // repeated queries hit the cache and return identical values
  TreeValues<double> again = lift.increment(0.0, 1.0);
  CHECK(again == direct);
}

TEST_CASE("fractional brownian samples have the exact grid covariance") {
  const int draws = 10000;

  SUBCASE("standard brownian variance at t = 1") {
    double acc = 0.0;
    for (int k = 0; k < draws; ++k) {
      PiecewiseLinearPath p = sample_fbm(0.5, 8, 1000 + k, 1);
      double x = p.value(p.breakpoints() - 1)[0];
      acc += x * x;
    }
    CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("H = 0.4 increment variance") {
    double acc1 = 0.0, accInc = 0.0;
    for (int k = 0; k < draws; ++k) {
      PiecewiseLinearPath p = sample_fbm(0.4, 8, 5000 + k, 1);
      double x1 = p.value(8)[0];
      double dx = x1 - p.value(4)[0];
      acc1 += x1 * x1;
      accInc += dx * dx;
    }
    CHECK(acc1 / draws == doctest::Approx(1.0).epsilon(0.05));
    CHECK(accInc / draws ==
          doctest::Approx(std::pow(0.5, 0.8)).epsilon(0.05));
  }

  SUBCASE("components are independent") {
    double cross = 0.0;
    for (int k = 0; k < draws; ++k) {
      PiecewiseLinearPath p = sample_fbm(0.5, 4, 9000 + k, 2);
      cross += p.value(4)[0] * p.value(4)[1];
    }
    CHECK(std::abs(cross / draws) < 0.05);
  }

  SUBCASE("deterministic per seed") {
    PiecewiseLinearPath a = sample_fbm(0.4, 16, 42, 2);
    PiecewiseLinearPath b = sample_fbm(0.4, 16, 42, 2);
    PiecewiseLinearPath c = sample_fbm(0.4, 16, 43, 2);
    REQUIRE(a.breakpoints() == b.breakpoints());
    bool same = true, differ = false;
    for (std::size_t i = 0; i < a.breakpoints(); ++i) {
      same = same && a.time(i) == b.time(i) &&
             (a.value(i).array() == b.value(i).array()).all();
      differ = differ || (a.value(i).array() != c.value(i).array()).any();
    }
    CHECK(same);
    CHECK(differ);
  }

  SUBCASE("starts at zero and validates arguments") {
    PiecewiseLinearPath p = sample_fbm(0.7, 4, 1, 3);
    CHECK(p.value(0).norm() == 0.0);
    CHECK(p.dim() == 3);
    CHECK_THROWS_AS(sample_fbm(0.0, 8, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_fbm(1.0, 8, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_fbm(0.5, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_fbm(0.5, 8193, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_fbm(0.5, 8, 1, 0), std::invalid_argument);
    bool jit = true;
    sample_fbm(0.5, 32, 7, 1, &jit);
    CHECK_FALSE(jit);  // BM covariance is comfortably positive definite
  }
}

TEST_CASE("order norms") {
  BranchedLift lift(line(1.0), 3);
  std::vector<double> grid = uniform_grid(8);
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);

  SUBCASE("linear driver attains the leaf norm at the full interval") {
    OrderNormResult r =
        order_norm(lift, Forest::single(make_leaf(0)), 0.5, grid);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.s == 0.0);
    CHECK(r.t == 1.0);
  }

  SUBCASE("constant driver has vanishing norms") {
    PiecewiseLinearPath flat({0.0, 1.0},
                             {Vec::Constant(1, 2.0), Vec::Constant(1, 2.0)});
    BranchedLift fl(flat, 3);
    OrderNormResult r =
        order_norm(fl, Forest::single(make_leaf(0)), 0.5, grid);
    CHECK(r.value == 0.0);
  }

  SUBCASE("submultiplicative over forest products") {
    std::mt19937_64 rng(3);
    PiecewiseLinearPath path = random_driver(rng, 2, 6);
    BranchedLift rl(path, 4);
    double alpha = 0.4;
    Forest f = parse_forest("[1:]");
    Forest g = parse_forest("[2:[1:]]");
    double nf = order_norm(rl, f, alpha, grid).value;
    double ng = order_norm(rl, g, alpha, grid).value;
    double nfg = order_norm(rl, f.times(g), alpha, grid).value;
    CHECK(nfg <= nf * ng * (1.0 + 1e-12));
  }

  SUBCASE("parallel kernel matches the serial reference") {
    std::mt19937_64 rng(17);
    PiecewiseLinearPath path = random_driver(rng, 2, 9);
    BranchedLift rl(path, 4);
    Forest f = parse_forest("[1:[2:]]");
    OrderNormResult a = order_norm(rl, f, 0.4, uniform_grid(24), true);
    OrderNormResult b = order_norm(rl, f, 0.4, uniform_grid(24), false);
    CHECK(a.value == b.value);
    CHECK(a.s == b.s);
    CHECK(a.t == b.t);
  }
}

TEST_CASE("lift diagnostics json") {
  BranchedLift lift(line(1.0), 2);
  std::string s = lift_diagnostics_json(lift, 0.0, 1.0);
  nlohmann::json j = nlohmann::json::parse(s);
  CHECK(j["s"] == 0.0);
  CHECK(j["t"] == 1.0);
  CHECK(j["level"] == 2);
  CHECK(j["values"]["[1:]"].get<double>() == doctest::Approx(1.0));
  CHECK(j["values"]["[1:[1:]]"].get<double>() == doctest::Approx(0.5));
}
