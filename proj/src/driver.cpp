#include "brp/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

namespace brp {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times,
                                         std::vector<Vec> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 2 || times_.size() != values_.size())
    throw std::invalid_argument("path needs matching times/values, >= 2 points");
  if (times_.front() != 0.0 || times_.back() != 1.0)
    throw std::invalid_argument("driver grid must cover [0,1]");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("driver grid must be strictly increasing");
  dim_ = static_cast<int>(values_.front().size());
  if (dim_ < 1) throw std::invalid_argument("driver dimension must be >= 1");
  for (const Vec& v : values_)
    if (v.size() != dim_)
      throw std::invalid_argument("inconsistent driver value dimension");
}

Vec PiecewiseLinearPath::slope(std::size_t segment) const {
  double dt = times_[segment + 1] - times_[segment];
  return (values_[segment + 1] - values_[segment]) / dt;
}

std::size_t PiecewiseLinearPath::segment_index(double t) const {
  if (t < 0.0 || t > 1.0)
    throw std::out_of_range("time outside [0,1]");
  // First breakpoint strictly greater than t, minus one; t = 1 maps to
  // the last segment.
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == times_.size()) return times_.size() - 2;
  return i - 1;
}

Vec PiecewiseLinearPath::value_at(double t) const {
  std::size_t i = segment_index(t);
  double dt = times_[i + 1] - times_[i];
  double w = (t - times_[i]) / dt;
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

PiecewiseLinearPath PiecewiseLinearPath::from_csv(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty driver file " + file.string());
  // Header: time,x1,...,xd
  int d = -1;
  {
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) ++cols;
    d = cols - 1;
  }
  if (d < 1) throw std::runtime_error("driver file needs time plus >= 1 column");
  std::vector<double> times;
  std::vector<Vec> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ','))
      throw std::runtime_error("malformed row in " + file.string());
    times.push_back(std::stod(cell));
    Vec v(d);
    for (int j = 0; j < d; ++j) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("short row in " + file.string());
      v[j] = std::stod(cell);
    }
    values.push_back(std::move(v));
  }
  return PiecewiseLinearPath(std::move(times), std::move(values));
}

void PiecewiseLinearPath::to_csv(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "time";
  for (int j = 1; j <= dim_; ++j) out << ",x" << j;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < times_.size(); ++i) {
    out << times_[i];
    for (int j = 0; j < dim_; ++j) out << ',' << values_[i][j];
    out << '\n';
  }
}

namespace {

// One factor per (H, n); Monte Carlo sweeps reuse it across seeds.
struct FbmFactorCache {
  std::mutex mu;
  double hurst = -1.0;
  std::size_t n = 0;
  bool jittered = false;
  Mat lower;
};

FbmFactorCache& fbm_cache() {
  static FbmFactorCache c;
  return c;
}

Mat fbm_cholesky(double hurst, std::size_t n, bool* jittered) {
  Mat cov(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    double s = static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t j = i; j <= n; ++j) {
      double t = static_cast<double>(j) / static_cast<double>(n);
      double c = 0.5 * (std::pow(s, 2.0 * hurst) + std::pow(t, 2.0 * hurst) -
                        std::pow(t - s, 2.0 * hurst));
      cov(i - 1, j - 1) = c;
      cov(j - 1, i - 1) = c;
    }
  }
  Eigen::LLT<Mat> llt(cov);
  if (llt.info() == Eigen::Success) {
    if (jittered) *jittered = false;
    return llt.matrixL();
  }
  cov.diagonal().array() += 1e-12;
  Eigen::LLT<Mat> retry(cov);
  if (retry.info() != Eigen::Success)
    throw std::runtime_error("fBM covariance factorization failed after jitter");
  if (jittered) *jittered = true;
  return retry.matrixL();
}

}  // namespace

PiecewiseLinearPath sample_fbm(double hurst, std::size_t n,
                               std::uint64_t seed, int d, bool* jittered) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("Hurst index must lie in (0,1)");
  if (n < 1 || n > (1u << 13))
    throw std::invalid_argument("fBM grid size must lie in [1, 8192]");
  if (d < 1) throw std::invalid_argument("fBM dimension must be >= 1");

  Mat lower;
  bool jit = false;
  {
    FbmFactorCache& c = fbm_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.hurst != hurst || c.n != n) {
      c.lower = fbm_cholesky(hurst, n, &c.jittered);
      c.hurst = hurst;
      c.n = n;
    }
    lower = c.lower;
    jit = c.jittered;
  }
  if (jittered) *jittered = jit;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    times[i] = static_cast<double>(i) / static_cast<double>(n);
  std::vector<Vec> values(n + 1, Vec::Zero(d));
  // Component-major draw order keeps the stream independent of how the
  // matrix-vector products below are evaluated.
  for (int j = 0; j < d; ++j) {
    Vec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = gauss(rng);
    Vec x = lower * z;
    for (std::size_t i = 1; i <= n; ++i) values[i][j] = x[i - 1];
  }
  return PiecewiseLinearPath(std::move(times), std::move(values));
}

}  // namespace brp
