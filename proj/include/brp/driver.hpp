#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace brp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Continuous piecewise-linear driver X: [0,1] -> R^d given by its values
// on a strictly increasing breakpoint grid t_0 = 0 < ... < t_n = 1.
class PiecewiseLinearPath {
 public:
  PiecewiseLinearPath(std::vector<double> times, std::vector<Vec> values);

  int dim() const { return dim_; }
  std::size_t breakpoints() const { return times_.size(); }
  std::size_t segments() const { return times_.size() - 1; }
  double time(std::size_t i) const { return times_[i]; }
  const Vec& value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& times() const { return times_; }

  // Slope on segment [t_i, t_{i+1}].
  Vec slope(std::size_t segment) const;

  // Index i with t_i <= t <= t_{i+1} (the left-most such segment).
  std::size_t segment_index(double t) const;

  // Linear interpolation; t must lie in [0,1].
  Vec value_at(double t) const;

  // CSV round trip, header "time,x1,...,xd", one row per breakpoint.
  static PiecewiseLinearPath from_csv(const std::filesystem::path& file);
  void to_csv(const std::filesystem::path& file) const;

 private:
  std::vector<double> times_;
  std::vector<Vec> values_;
  int dim_;
};

// Piecewise-linear interpolation of d independent fractional Brownian
// motions with Hurst index H on the uniform grid {i/n}.  Exact joint
// covariance at the grid points via Cholesky; if the factorization fails
// a 1e-12 diagonal jitter is applied (reported through *jittered).
// Deterministic per (seed, H, n, d): the same arguments always produce
// the same path bytes.
PiecewiseLinearPath sample_fbm(double hurst, std::size_t n,
                               std::uint64_t seed, int d,
                               bool* jittered = nullptr);

}  // namespace brp
