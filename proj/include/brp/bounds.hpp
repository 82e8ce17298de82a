#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "brp/lift.hpp"
#include "brp/sigma.hpp"
#include "brp/solver.hpp"
#include "brp/trees.hpp"

namespace brp {

// Order norms [X:h] of one lift over all proper trees of order <= level,
// evaluated on a shared grid, with the attaining pairs kept for reports.
struct LiftNorms {
  double alpha = 0.5;
  unsigned level = 1;
  std::map<TreeId, OrderNormResult, TreeIdLess> by_tree;

  double value(TreeId h) const;
  // min_h [X:h]^{-1/(|h| alpha)}; trees with vanishing norm do not bind,
  // and an all-zero lift gives +infinity.
  double min_inverse_scale() const;
  nlohmann::json to_json() const;
};

LiftNorms lift_norms(const BranchedLift& lift, unsigned level, double alpha,
                     std::size_t grid_cells = 64, bool parallel = true);

// Right-hand side of the coming-down estimate at time t:
//   max{ t^{-1/(m-1)}, max_h [X:h]^{1/(m alpha |h|)} }          (bounded)
//   max{ t^{-1/(m-1)}, max_h [X:h]^{1/(((m-1)alpha-gamma+1)|h|)} } (polynomial,
//   admissible only for 1 <= gamma < (m-1) alpha + 1).
double theorem_rhs(double t, const LiftNorms& norms, double m, double alpha,
                   GrowthClass mode, double gamma = 1.0);

// Combined all-time bound shape, valid down to t = 0:
//   max{ min{t^{-1/(m-1)}, |y0|}, max_h [X:h]^{e(h)}, 1 }
// with e(h) = 1/((m-1) alpha |h|) in the bounded case and the polynomial
// exponent above otherwise.
double corollary_rhs(double t, double y0_norm, const LiftNorms& norms,
                     double m, double alpha, GrowthClass mode,
                     double gamma = 1.0);

// Small-time horizons: T1 = eps1 <y0>^{-(m-1)} and
// T2 = eps2 min_h [X:h]^{-1/(|h| alpha)}, with the polynomial variant
// carrying the extra factor <y0>^{-(gamma-1)/alpha}.  T2 is capped at 1
// (the time domain); eps1 = 0 selects the proof's choice (1/2) 3^{-m}.
struct Horizons {
  double t1 = 0.0;
  double t2 = 0.0;
  double combined = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

Horizons small_time_horizons(double y0_norm, const LiftNorms& norms, double m,
                             double alpha, GrowthClass mode,
                             double gamma = 1.0, double eps1 = 0.0,
                             double eps2 = 0.05);

// Hölder seminorm of the unit coefficient over the grid times inside
// [a, b]: sup |V_t - V_s| / |t-s|^alpha.
double holder_seminorm(const std::vector<double>& times,
                       const std::vector<Vec>& values, double a, double b,
                       double alpha, bool parallel = true);

// Four-term decay inequality: with Y = y0 1 - int |Y|^{m-1} Y + Z,
// |Y(t)| <= C(m) max{ (t-L)^{-1/(m-1)},
//                     (sup_{s in [L,t]} [Z]_{a,[s-L,s]} L^{a-1})^{1/m},
//                     (L^a |Y|_{[0,t]}^{m-1} sup_s [Y]_{a,[s-L,s]})^{1/m},
//                     L^a [Y]_{a,[t-L,t]} }.
struct MwReport {
  double value = 0.0;
  int arg_term = 0;  // 1-based index of the attaining term
  std::array<double, 4> terms{};
};

MwReport mw_rhs(const TreePath& Y, const TreePath& Z, double t, double L,
                double m, double alpha);

// Interior regularity probe on I = [a, b] of length L: checks the
// smallness condition L^{(|f|+1)a} [X:[f]_mu] U_mu(f,Y,I) <= eps for all
// forests of order <= N-1, and evaluates both sides of the truncated
// estimate
//   L^a [Z]_{a,I} <~ sum_{f,mu} [X:[f]_mu] { L^{(|f|+1)a+1} U_mu(f,Y,I)
//       |Y|_I^m + max_{fbar} L^{(|fbar|+|f|+1)a} U_mu(f,fbar,Y,I)
//       [X:fbar] } + sum_{h, |h| <= N} L^{|h|a} [X:h] |Upsilon[h](Y.)|_I,
// with fbar ranging over the boundary of the forests of order
// <= N-|f|-1.
struct InteriorReport {
  double lhs_z = 0.0;  // L^alpha [Z]_{alpha,I}
  double lhs_y = 0.0;  // L^alpha [Y]_{alpha,I}
  double rhs = 0.0;
  bool condition = true;
  double condition_max = 0.0;  // worst smallness product over (f, mu)
  double ratio = 0.0;          // lhs_z / rhs when rhs > 0
};

InteriorReport interior_rhs(const TreePath& Y, double a, double b,
                            const BranchedLift& lift, const SigmaModel& model,
                            double m, double alpha, double eps = 1.0,
                            std::size_t stride = 1,
                            std::size_t norm_cells = 48);

// Coming-down sweep: solve for every |y0| in the list, read |Y(t)| at the
// requested times, and fit C = |Y(t)| / theorem_rhs(t).  The headline
// quantity is the spread max C / min C across y0 at fixed t.
struct BoundRow {
  double y0 = 0.0;
  double t = 0.0;
  double measured = 0.0;
  double rhs = 0.0;
  double fitted = 0.0;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  double fitted_min = 0.0;
  double fitted_max = 0.0;
  double spread = 0.0;  // max over t of (max fitted / min fitted over y0)
  nlohmann::json detail;

  nlohmann::json to_json() const;
};

BoundReport coming_down_sweep(const std::vector<double>& y0_list,
                              const std::vector<double>& t_list,
                              const BranchedLift& lift,
                              const SigmaModel& model, double m, double alpha,
                              std::size_t steps, GrowthClass mode,
                              double gamma = 1.0, std::size_t norm_cells = 64);

// Small-time check over one solved path: for every grid time
// t <= min{T1, T2} assert <Y(t)> <= 2 <y0> and report the margin.
struct SmallTimeReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // max over the window of <Y(t)> / <y0>
  double window = 0.0;     // min{T1, T2}
};

SmallTimeReport small_time_check(const TreePath& Y, const Horizons& horizons);

// Monte Carlo tails of sup over [window_start, 1] of |Y| along fBM
// drivers; per-seed solver aborts are counted and excluded.
struct TailConfig {
  double hurst = 0.4;
  double alpha = 0.35;
  unsigned level = 2;
  double m = 3.0;
  double y0 = 1.0;
  int d = 1;
  std::size_t seeds = 1000;
  std::uint64_t seed0 = 1;
  std::size_t grid = 256;  // fBM breakpoints and solver steps
  double window_start = 0.5;
  // The sample-size floor (1000 seeds) guards the tail statistics; callers
  // that knowingly want a toy run must opt out explicitly.
  bool allow_small_samples = false;
};

struct TailReport {
  std::vector<double> sup_values;  // ascending, successful seeds only
  std::size_t failures = 0;

  double quantile(double p) const;
  // Empirical survival S(x) = P(sup > x) on an even grid of x values.
  std::vector<std::array<double, 2>> survival(std::size_t points = 64) const;
  // Slope of log(-log S(x)) against log x over the upper quantiles: a
  // positive value is consistent with a stretched-exponential tail
  // exp(-c x^theta).  Purely diagnostic; 0 when the sample is degenerate.
  double tail_theta() const;
};

TailReport mc_tails(const TailConfig& config, const SigmaModel& model);

}  // namespace brp
