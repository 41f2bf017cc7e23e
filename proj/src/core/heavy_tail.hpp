#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "core/rng.hpp"

namespace levyspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A law on [0, inf) described by its tail function G(t) = L((t, inf)), the
// generalized inverse G^{-1}(u) = inf{y : G(y) <= u} and the truncated first
// moment int_0^t x L(dx). New families plug in by implementing this triple.
class TailFamily {
 public:
  virtual ~TailFamily() = default;
  virtual double tail(double t) const = 0;
  virtual double quantile(double u) const = 0;
  virtual double truncated_mean(double t) const = 0;
  // E[X^p 1{X <= t}] for p > alpha.
  virtual double truncated_moment(double p, double t) const = 0;
  virtual double mean() const = 0;
};

// U = V^{-1/alpha}, V uniform on (0,1): G(t) = t^{-alpha} for t >= 1.
class InversePowerFamily final : public TailFamily {
 public:
  explicit InversePowerFamily(double alpha);
  double tail(double t) const override;
  double quantile(double u) const override;
  double truncated_mean(double t) const override;
  double truncated_moment(double p, double t) const override;
  double mean() const override;

 private:
  double alpha_;
};

// A weight law in H_alpha with sign parameter theta (probability that a
// signed entry is positive).
class TailLaw {
 public:
  TailLaw(double alpha, double theta = 1.0);
  TailLaw(double alpha, double theta, std::shared_ptr<const TailFamily> family);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }

  double tail(double t) const;
  double quantile(double u) const;

  // Scale of the maximum of n draws: G^{-1}(1/n); n^{1/alpha} for the
  // built-in family.
  double a_n(std::uint64_t n) const;
  // int_0^{a_n} x L(dx).
  double w_n(std::uint64_t n) const;
  // n/a_n for alpha in (1,2); n w_n / a_n at alpha = 1.
  double kappa_n(std::uint64_t n) const;
  double truncated_moment(double p, double t) const;
  // Infinite for alpha <= 1.
  double mean() const;

  double sample(Rng& rng) const { return quantile(rng.uniform()); }

 private:
  double alpha_;
  double theta_;
  std::shared_ptr<const TailFamily> family_;
};

// Finite-variance weights, uniform on [lo, hi].
struct UniformLaw {
  double lo = 0.5;
  double hi = 1.5;
  double mean() const { return 0.5 * (lo + hi); }
  double variance() const { return (hi - lo) * (hi - lo) / 12.0; }
  double sample(Rng& rng) const { return lo + (hi - lo) * rng.uniform(); }
};

// Symmetric n x n matrix whose upper triangle (diagonal included) holds
// i.i.d. draws, filled row by row.
template <class Law>
Matrix sample_symmetric(const Law& law, std::int64_t n, Rng& rng) {
  Matrix u(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      const double x = law.sample(rng);
      u(i, j) = x;
      u(j, i) = x;
    }
  }
  return u;
}

Matrix sample_weights(const TailLaw& law, std::int64_t n, Rng& rng);

// |X_ij| drawn exactly as sample_weights would with the same weight stream;
// each upper-triangle sign is + with probability theta from sign_rng.
Matrix sample_signed(const TailLaw& law, std::int64_t n, Rng& weight_rng, Rng& sign_rng);

}  // namespace levyspec
