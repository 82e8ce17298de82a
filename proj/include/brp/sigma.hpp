#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

namespace brp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double bracket(double x) { return std::sqrt(1.0 + x * x); }
inline double bracket(const Vec& y) { return std::sqrt(1.0 + y.squaredNorm()); }

// Truncation level N from the regularity alpha: the unique N with
// N*alpha <= 1 < (N+1)*alpha.
unsigned level_from_alpha(double alpha, unsigned cap = 4);

enum class GrowthClass { bounded, polynomial };

// Coefficient field sigma: R^k -> R^{k x d}, supplied through an exact
// partial-derivative oracle for the columns sigma_mu: R^k -> R^k.  All
// evaluation is pure and models are immutable after construction.
class SigmaModel {
public:
  SigmaModel(int k, int d, unsigned n, GrowthClass growth, double c_sigma,
             double gamma);
  virtual ~SigmaModel() = default;

  int state_dim() const { return k_; }
  int driver_dim() const { return d_; }
  unsigned max_order() const { return n_; }
  GrowthClass growth() const { return growth_; }
  double c_sigma() const { return c_sigma_; }
  double gamma() const { return gamma_; }

  // Component i of the exact partial derivative d^beta sigma_mu at y;
  // beta is a multi-index over the k state coordinates, |beta| <= N.
  virtual double deriv(int mu, int i, const std::vector<int>& beta,
                       const Vec& y) const = 0;

  // Multilinear application D^p sigma_mu(y)[dirs[0], .., dirs[p-1]].
  Vec apply(int mu, const Vec& y, const std::vector<const Vec*>& dirs) const;

  Vec sigma(int mu, const Vec& y) const { return apply(mu, y, {}); }

  // Worst ratio |d^beta sigma(y)| / bound(y) over the sample and all
  // |beta| <= N; at most 1 when the declared (C_sigma, gamma) metadata is
  // honest on the sample.
  double growth_ratio(const std::vector<Vec>& sample) const;

protected:
  void set_c_sigma(double c) { c_sigma_ = c; }

private:
  int k_;
  int d_;
  unsigned n_;
  GrowthClass growth_;
  double c_sigma_;
  double gamma_;
};

// sigma_mu,i(y) = A(i, mu), constant in y.
class ConstantSigma : public SigmaModel {
public:
  ConstantSigma(Mat a, unsigned n);
  double deriv(int mu, int i, const std::vector<int>& beta,
               const Vec& y) const override;

private:
  Mat a_;
};

// sigma_mu(y) = A_mu y (one k x k matrix per driver component).
class LinearSigma : public SigmaModel {
public:
  LinearSigma(std::vector<Mat> a, unsigned n);
  double deriv(int mu, int i, const std::vector<int>& beta,
               const Vec& y) const override;

private:
  std::vector<Mat> a_;
};

// Scalar sigma(x) = c <x>^gamma with <x> = sqrt(1 + x^2); k = d = 1.
// Satisfies the polynomial-growth assumption with the given gamma.
class PowerBracketSigma : public SigmaModel {
public:
  PowerBracketSigma(double gamma, double scale, unsigned n);
  double deriv(int mu, int i, const std::vector<int>& beta,
               const Vec& y) const override;

private:
  // d^p sigma as a sum of terms coef * x^m * <x>^(gamma - 2j).
  struct Term {
    double coef;
    int m;
    int j;
  };
  std::vector<std::vector<Term>> orders_;
};

// sigma_mu,i(y) = amp(i, mu) * tanh(w_mu,i . y + b(i, mu)); bounded with
// exact derivatives of every order (polynomials in tanh).
class TanhSigma : public SigmaModel {
public:
  // weights[mu] is k x k: row i holds w_mu,i.
  TanhSigma(std::vector<Mat> weights, Mat amp, Mat bias, unsigned n);
  // Scalar convenience: sigma(x) = amp * tanh(w x + b).
  TanhSigma(double w, double amp, double bias, unsigned n);
  double deriv(int mu, int i, const std::vector<int>& beta,
               const Vec& y) const override;

private:
  std::vector<Mat> weights_;
  Mat amp_;
  Mat bias_;
  // Coefficients of tanh^(p) as a polynomial in t = tanh.
  std::vector<std::vector<double>> tanh_derivs_;
};

// Factory used by the experiment configs: kind is one of "constant",
// "linear", "power_bracket", "tanh", "zero".
std::shared_ptr<SigmaModel> make_sigma(const std::string& kind, int k, int d,
                                       unsigned n, double gamma, double scale);

}  // namespace brp
