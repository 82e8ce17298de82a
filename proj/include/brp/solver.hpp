#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "brp/lift.hpp"
#include "brp/sigma.hpp"
#include "brp/trees.hpp"
#include "brp/upsilon.hpp"

namespace brp {

// Expansion of the solution: per grid time, the unit coefficient Y_t plus
// tree coefficients <h, Y_t> for the proper trees of order <= N-1.
struct TreePath {
  std::vector<double> times;
  std::vector<Vec> unit;
  std::vector<TreeCoeffs> coeffs;
  std::vector<TreeId> tree_set;  // proper trees of order <= level-1
  unsigned level = 1;            // N
  int k = 1;
  bool coherent = false;

  std::size_t index_of_time(double t) const;
  // <f, Y_{t_i}>: unit for the empty forest, the stored coefficient for a
  // single tree of the working set, zero otherwise (span projection).
  Vec coefficient(std::size_t i, const Forest& f) const;
};

// Expansion of a composed coefficient sigma_mu(Y): forest-indexed values
// per time, the empty forest carrying the unit coefficient.
using ForestCoeffs = std::map<Forest, Vec>;

struct ForestPath {
  std::vector<double> times;
  std::vector<ForestCoeffs> values;
  unsigned level = 1;
  int k = 1;

  std::size_t index_of_time(double t) const;
  Vec coefficient(std::size_t i, const Forest& f) const;
};

struct SolveConfig {
  double alpha = 0.5;
  double m = 2.0;
  Vec y0;
  std::size_t steps = 256;
  unsigned level = 0;      // 0: derive N from alpha
  unsigned level_cap = 4;  // default order cap
  bool drift = true;       // disable to drop the -|Y|^{m-1}Y term
};

// Numerical abort: the state left the trusted range (|Y| > 1e12) or
// stopped being finite.
struct SolverAbort : std::runtime_error {
  explicit SolverAbort(const std::string& what) : std::runtime_error(what) {}
};

// Exact flow of dY = -|Y|^{m-1} Y dt over duration tau:
//   y -> y * (1 + (m-1) tau |y|^{m-1})^{-1/(m-1)},
// which maps 0 to 0 and tau = 0 to y exactly, and is contractive for all
// magnitudes (no step-size restriction even for |y| ~ 1e8).
Vec drift_flow(const Vec& y, double tau, double m);

// Strang-split order-N march: half drift flow, branched Euler rough step
//   Y += sum_{h, |h| <= N} (1/S(h)) Upsilon[h](Y) <X_{t,t+dt}, h>,
// half drift flow.  Tree coefficients are filled from coherence, so the
// returned path satisfies <[f]_mu, Y_t> = (1/S(f)) Upsilon_mu[f](Y_t)
// exactly at every grid time.
TreePath solve(const SolveConfig& config, const SigmaModel& model,
               const BranchedLift& lift);

// Composition g(Y)_s of a driver component with a tree path by Taylor
// expansion about Y_s, truncated to forests of order <= N-1.
ForestCoeffs compose_sigma(const SigmaModel& model, int mu, const TreePath& Y,
                           std::size_t i);
ForestPath compose_sigma_path(const SigmaModel& model, int mu,
                              const TreePath& Y);

// Single compensated Riemann term
//   Xi^{U,mu}_{s,t} = sum_f <f, U_s> <X_{s,t}, [f]_mu>.
Vec xi(const ForestCoeffs& u_s, int mu, double s, double t,
       const BranchedLift& lift);

// Dyadic compensated Riemann sums for int_s^t U_r dX^mu_r.  Level L uses
// 2^L uniform pieces; the last inter-level difference serves as the error
// proxy, and a non-decaying difference sequence is reported as
// non-convergence.
struct SewingResult {
  Vec value;
  double error_proxy = 0.0;
  std::vector<double> level_diffs;
  bool converged = true;
};

SewingResult sewing_integral(const std::function<ForestCoeffs(double)>& u,
                             int mu, double s, double t,
                             const BranchedLift& lift, unsigned levels = 10);

// f-remainder R^{path,f}_{s,t} = <f, path_t> - <X_{s,t} (x) f, Delta path_s>.
Vec remainder(const TreePath& Y, const Forest& f, double s, double t,
              const BranchedLift& lift);
Vec remainder(const ForestPath& U, const Forest& f, double s, double t,
              const BranchedLift& lift);

struct RemainderReport {
  Forest f;
  double interval_start = 0.0;
  double interval_end = 1.0;
  double norm = 0.0;          // sup |R| / |t-s|^{(N-|f|) alpha}
  double at_s = 0.0;          // attaining pair
  double at_t = 0.0;
  double exponent = 0.0;      // (N-|f|) alpha
  std::vector<double> samples;  // |R| over consecutive grid pairs
};

RemainderReport remainder_norm(const TreePath& Y, const Forest& f, double a,
                               double b, double alpha,
                               const BranchedLift& lift,
                               std::size_t stride = 1, bool parallel = true);
RemainderReport remainder_norm(const ForestPath& U, const Forest& f, double a,
                               double b, double alpha,
                               const BranchedLift& lift,
                               std::size_t stride = 1, bool parallel = true);

// Right-hand side of the level-f remainder formula for coherent paths:
//   R^{sigma_mu(Y),f}_{s,t} = bold_Upsilon_mu[f](Y_t)
//     - sum_{forests g, |g| <= N-1-|f|} (Multi(g)/#g!)
//         D^{#g} bold_Upsilon_mu[f](Y_s)[(bold_Upsilon[h](Y_s))_{h in g}]
//         <X_{s,t}, g>.
Vec remainder_formula_rhs(const Forest& f, int mu, const TreePath& Y, double s,
                          double t, const SigmaModel& model,
                          const BranchedLift& lift);

// Expansion bound E^Y_{s,t} = sum_{h, |h| <= N-1} |Upsilon[h](Y_s)| |<X_{s,t},h>|.
double e_bound(const SigmaModel& model, const TreePath& Y, double s, double t,
               const BranchedLift& lift);

// Sampled sup of derivative magnitudes over the Taylor balls:
// without fbar: sup |D Upsilon_mu[f](Y_s + a)|, |a| <= E_{s,t} + |Y_t - Y_s|;
// with fbar:    sup |D^{#fbar} Upsilon_mu[f](Y_s + z)[(Upsilon[h](Y_s))_h]|,
//               |z| <= E_{s,t}.
// The balls are probed at the extreme radius along the zero direction,
// +/- axes, and 32 fixed pseudo-random unit directions, so the result is
// a deterministic lower bound on the continuum supremum.
double u_quantity(const SigmaModel& model, const Forest& f, const Forest* fbar,
                  int mu, const TreePath& Y, double a, double b,
                  const BranchedLift& lift, std::size_t stride = 1,
                  bool parallel = true);

// Prefix drift integrals I_j = int_0^{t_j} |Y_r|^{m-1} Y_r dr by a
// fourth-order composite rule on the solver grid.
std::vector<Vec> drift_prefix_integral(const TreePath& Y, double m);

// The rough-integral path Z from the solution identity
// Y = y0·1 - (int |Y|^{m-1} Y dr)·1 + Z: unit coefficient shifted by the
// drift integral, tree coefficients shared with Y.
TreePath z_path(const TreePath& Y, double m, const Vec& y0);

// Solution export: CSV of the unit coefficient and a JSON sidecar with
// thinned tree-coefficient snapshots and remainder-norm tables.
void solution_to_csv(const TreePath& Y, const std::filesystem::path& file);
nlohmann::json solution_sidecar(const TreePath& Y, const BranchedLift& lift,
                                double alpha, std::size_t snapshots = 9,
                                std::size_t norm_stride = 8);

}  // namespace brp
