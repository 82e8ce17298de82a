#include "brp/sigma.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace brp {

unsigned level_from_alpha(double alpha, unsigned cap) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("level_from_alpha: alpha must be in (0, 1]");
  unsigned n = static_cast<unsigned>(std::floor(1.0 / alpha + 1e-9));
  if (n < 1) n = 1;
  if (n > cap)
    throw std::invalid_argument(
        "level_from_alpha: truncation level " + std::to_string(n) +
        " exceeds the configured cap " + std::to_string(cap));
  return n;
}

SigmaModel::SigmaModel(int k, int d, unsigned n, GrowthClass growth,
                       double c_sigma, double gamma)
    : k_(k), d_(d), n_(n), growth_(growth), c_sigma_(c_sigma), gamma_(gamma) {
  if (k < 1 || d < 1) throw std::invalid_argument("SigmaModel: k, d >= 1");
  if (n < 1) throw std::invalid_argument("SigmaModel: N >= 1");
}

Vec SigmaModel::apply(int mu, const Vec& y,
                      const std::vector<const Vec*>& dirs) const {
  const std::size_t p = dirs.size();
  Vec out = Vec::Zero(k_);
  std::vector<int> idx(p, 0);
  std::vector<int> beta(k_, 0);
  while (true) {
    double weight = 1.0;
    for (std::size_t l = 0; l < p; ++l) weight *= (*dirs[l])(idx[l]);
    if (weight != 0.0) {
      std::fill(beta.begin(), beta.end(), 0);
      for (std::size_t l = 0; l < p; ++l) ++beta[idx[l]];
      for (int i = 0; i < k_; ++i) out(i) += deriv(mu, i, beta, y) * weight;
    }
    std::size_t pos = 0;
    while (pos < p && ++idx[pos] == k_) idx[pos++] = 0;
    if (pos == p) break;
  }
  return out;
}

namespace {

void enumerate_beta(int k, unsigned max, std::vector<int>& beta, int from,
                    unsigned used, const std::function<void()>& fn) {
  fn();
  for (int j = from; j < k; ++j) {
    if (used == max) break;
    ++beta[j];
    enumerate_beta(k, max, beta, j, used + 1, fn);
    --beta[j];
  }
}

}  // namespace

double SigmaModel::growth_ratio(const std::vector<Vec>& sample) const {
  double worst = 0.0;
  std::vector<int> beta(k_, 0);
  for (const Vec& y : sample) {
    double br = bracket(y);
    enumerate_beta(k_, n_, beta, 0, 0, [&] {
      unsigned ord = 0;
      for (int j = 0; j < k_; ++j) ord += beta[j];
      double bound = c_sigma_;
      if (growth_ == GrowthClass::polynomial)
        bound *= std::pow(br, gamma_ - static_cast<double>(ord));
      for (int mu = 0; mu < d_; ++mu)
        for (int i = 0; i < k_; ++i) {
          double v = std::abs(deriv(mu, i, beta, y));
          if (bound > 0.0) worst = std::max(worst, v / bound);
        }
    });
  }
  return worst;
}

ConstantSigma::ConstantSigma(Mat a, unsigned n)
    : SigmaModel(static_cast<int>(a.rows()), static_cast<int>(a.cols()), n,
                 GrowthClass::bounded,
                 std::max(a.cwiseAbs().maxCoeff(), 1e-12), 0.0),
      a_(std::move(a)) {}

double ConstantSigma::deriv(int mu, int i, const std::vector<int>& beta,
                            const Vec& /*y*/) const {
  for (int b : beta)
    if (b != 0) return 0.0;
  return a_(i, mu);
}

LinearSigma::LinearSigma(std::vector<Mat> a, unsigned n)
    : SigmaModel(static_cast<int>(a.at(0).rows()), static_cast<int>(a.size()),
                 n, GrowthClass::polynomial, 1.0, 1.0),
      a_(std::move(a)) {
  double c = 1e-12;
  for (const Mat& m : a_)
    for (int i = 0; i < m.rows(); ++i)
      c = std::max(c, m.row(i).norm());
  set_c_sigma(c);
}

double LinearSigma::deriv(int mu, int i, const std::vector<int>& beta,
                          const Vec& y) const {
  int total = 0, where = -1;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    total += beta[j];
    if (beta[j] > 0) where = static_cast<int>(j);
  }
  if (total == 0) return a_[mu].row(i).dot(y);
  if (total == 1) return a_[mu](i, where);
  return 0.0;
}

PowerBracketSigma::PowerBracketSigma(double gamma, double scale, unsigned n)
    : SigmaModel(1, 1, n, GrowthClass::polynomial, 1.0, gamma) {
  if (scale <= 0.0)
    throw std::invalid_argument("PowerBracketSigma: scale must be positive");
  orders_.push_back({{scale, 0, 0}});
  for (unsigned p = 0; p < n; ++p) {
    std::map<std::pair<int, int>, double> next;
    for (const Term& t : orders_[p]) {
      if (t.m > 0) next[{t.m - 1, t.j}] += t.coef * t.m;
      next[{t.m + 1, t.j + 1}] += t.coef * (gamma - 2.0 * t.j);
    }
    std::vector<Term> terms;
    for (const auto& [key, coef] : next)
      if (coef != 0.0) terms.push_back({coef, key.first, key.second});
    orders_.push_back(std::move(terms));
  }
  // Fit C_sigma on a wide probe grid so that the declared polynomial bound
  // |d^p sigma| <= C <x>^{gamma-p} holds with a little margin.
  double c = 1e-12;
  for (double ax = 0.0; ax <= 8.0; ax += 0.0625) {
    for (double sign : {-1.0, 1.0}) {
      Vec y(1);
      y(0) = sign * (std::pow(10.0, ax) - 1.0);
      double br = bracket(y(0));
      for (unsigned p = 0; p <= n; ++p) {
        std::vector<int> beta{static_cast<int>(p)};
        double v = std::abs(deriv(0, 0, beta, y));
        c = std::max(c, v / std::pow(br, gamma - static_cast<double>(p)));
      }
    }
  }
  set_c_sigma(1.01 * c);
}

double PowerBracketSigma::deriv(int /*mu*/, int /*i*/,
                                const std::vector<int>& beta,
                                const Vec& y) const {
  unsigned p = static_cast<unsigned>(beta[0]);
  if (p >= orders_.size())
    throw std::invalid_argument("PowerBracketSigma: derivative order beyond N");
  double x = y(0);
  double val = 0.0;
  for (const Term& t : orders_[p])
    val += t.coef * std::pow(x, t.m) *
           std::pow(1.0 + x * x, 0.5 * (gamma() - 2.0 * t.j));
  return val;
}

namespace {

std::vector<std::vector<double>> tanh_derivative_polys(unsigned n) {
  // p_0(t) = t; p_{k+1}(t) = p_k'(t) (1 - t^2).
  std::vector<std::vector<double>> polys;
  polys.push_back({0.0, 1.0});
  for (unsigned p = 0; p < n; ++p) {
    const std::vector<double>& cur = polys.back();
    std::vector<double> dp(cur.size() >= 1 ? cur.size() - 1 : 0, 0.0);
    for (std::size_t m = 1; m < cur.size(); ++m)
      dp[m - 1] = cur[m] * static_cast<double>(m);
    std::vector<double> next(dp.size() + 2, 0.0);
    for (std::size_t m = 0; m < dp.size(); ++m) {
      next[m] += dp[m];
      next[m + 2] -= dp[m];
    }
    polys.push_back(std::move(next));
  }
  return polys;
}

double poly_eval(const std::vector<double>& p, double t) {
  double v = 0.0;
  for (std::size_t m = p.size(); m-- > 0;) v = v * t + p[m];
  return v;
}

}  // namespace

TanhSigma::TanhSigma(std::vector<Mat> weights, Mat amp, Mat bias, unsigned n)
    : SigmaModel(static_cast<int>(amp.rows()), static_cast<int>(amp.cols()), n,
                 GrowthClass::bounded, 1.0, 0.0),
      weights_(std::move(weights)),
      amp_(std::move(amp)),
      bias_(std::move(bias)),
      tanh_derivs_(tanh_derivative_polys(n)) {
  double wmax = 0.0;
  for (const Mat& w : weights_) wmax = std::max(wmax, w.cwiseAbs().maxCoeff());
  double pmax = 0.0;
  for (const auto& poly : tanh_derivs_)
    for (double t = -1.0; t <= 1.0; t += 1.0 / 256.0)
      pmax = std::max(pmax, std::abs(poly_eval(poly, t)));
  double c = amp_.cwiseAbs().maxCoeff() * pmax *
             std::pow(std::max(1.0, wmax * std::sqrt(double(state_dim()))),
                      static_cast<double>(n));
  set_c_sigma(std::max(1.01 * c, 1e-12));
}

TanhSigma::TanhSigma(double w, double amp, double bias, unsigned n)
    : TanhSigma(std::vector<Mat>{Mat::Constant(1, 1, w)},
                Mat::Constant(1, 1, amp), Mat::Constant(1, 1, bias), n) {}

double TanhSigma::deriv(int mu, int i, const std::vector<int>& beta,
                        const Vec& y) const {
  unsigned p = 0;
  double wpow = 1.0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    p += static_cast<unsigned>(beta[j]);
    for (int b = 0; b < beta[j]; ++b)
      wpow *= weights_[mu](i, static_cast<int>(j));
  }
  if (p >= tanh_derivs_.size())
    throw std::invalid_argument("TanhSigma: derivative order beyond N");
  if (wpow == 0.0) return 0.0;
  double u = weights_[mu].row(i).dot(y) + bias_(i, mu);
  return amp_(i, mu) * poly_eval(tanh_derivs_[p], std::tanh(u)) * wpow;
}

std::shared_ptr<SigmaModel> make_sigma(const std::string& kind, int k, int d,
                                       unsigned n, double gamma, double scale) {
  if (kind == "zero") return std::make_shared<ConstantSigma>(Mat::Zero(k, d), n);
  if (kind == "constant")
    return std::make_shared<ConstantSigma>(scale * Mat::Ones(k, d), n);
  if (kind == "linear") {
    std::vector<Mat> a;
    for (int mu = 0; mu < d; ++mu)
      a.push_back(scale * Mat::Identity(k, k));
    return std::make_shared<LinearSigma>(std::move(a), n);
  }
  if (kind == "power_bracket") {
    if (k != 1 || d != 1)
      throw std::invalid_argument("make_sigma: power_bracket needs k = d = 1");
    return std::make_shared<PowerBracketSigma>(gamma, scale, n);
  }
  if (kind == "tanh") {
    // Diagonal weights; the bias shifts per driver column so distinct
    // columns are genuinely different fields.
    std::vector<Mat> w(d, Mat::Identity(k, k));
    Mat amp = scale * Mat::Ones(k, d);
    Mat bias(k, d);
    for (int i = 0; i < k; ++i)
      for (int mu = 0; mu < d; ++mu) bias(i, mu) = 0.2 * (mu + 1);
    return std::make_shared<TanhSigma>(std::move(w), std::move(amp),
                                       std::move(bias), n);
  }
  throw std::invalid_argument("make_sigma: unknown kind \"" + kind + "\"");
}

}  // namespace brp
