#include "core/heavy_tail.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace levyspec {

InversePowerFamily::InversePowerFamily(double alpha) : alpha_(alpha) {}

double InversePowerFamily::tail(double t) const {
  return t < 1.0 ? 1.0 : std::pow(t, -alpha_);
}

double InversePowerFamily::quantile(double u) const { return std::pow(u, -1.0 / alpha_); }

double InversePowerFamily::truncated_mean(double t) const {
  if (t <= 1.0) return 0.0;
  if (alpha_ == 1.0) return std::log(t);
  return alpha_ / (1.0 - alpha_) * (std::pow(t, 1.0 - alpha_) - 1.0);
}

double InversePowerFamily::truncated_moment(double p, double t) const {
  if (t <= 1.0) return 0.0;
  return alpha_ / (p - alpha_) * (std::pow(t, p - alpha_) - 1.0);
}

double InversePowerFamily::mean() const {
  return alpha_ > 1.0 ? alpha_ / (alpha_ - 1.0) : std::numeric_limits<double>::infinity();
}

TailLaw::TailLaw(double alpha, double theta)
    : TailLaw(alpha, theta, std::make_shared<InversePowerFamily>(alpha)) {}

TailLaw::TailLaw(double alpha, double theta, std::shared_ptr<const TailFamily> family)
    : alpha_(alpha), theta_(theta), family_(std::move(family)) {
  require(std::isfinite(alpha) && alpha > 0.0, "tail law: alpha must be > 0");
  require(theta >= 0.0 && theta <= 1.0, "tail law: theta must lie in [0,1]");
  require(family_ != nullptr, "tail law: missing family");
}

double TailLaw::tail(double t) const {
  require(t >= 0.0, "tail: t must be >= 0");
  return family_->tail(t);
}

double TailLaw::quantile(double u) const {
  require(u > 0.0 && u <= 1.0, "quantile: u must lie in (0,1]");
  return family_->quantile(u);
}

double TailLaw::a_n(std::uint64_t n) const {
  require(n >= 1, "a_n: n must be >= 1");
  return family_->quantile(1.0 / static_cast<double>(n));
}

double TailLaw::w_n(std::uint64_t n) const { return family_->truncated_mean(a_n(n)); }

double TailLaw::kappa_n(std::uint64_t n) const {
  require(alpha_ >= 1.0 && alpha_ < 2.0, "kappa_n: requires alpha in [1,2)");
  const double base = static_cast<double>(n) / a_n(n);
  return alpha_ == 1.0 ? base * w_n(n) : base;
}

double TailLaw::truncated_moment(double p, double t) const {
  require(p > alpha_, "truncated_moment: exponent p must exceed alpha");
  require(t >= 1.0, "truncated_moment: cutoff t must be >= 1");
  return family_->truncated_moment(p, t);
}

double TailLaw::mean() const { return family_->mean(); }

Matrix sample_weights(const TailLaw& law, std::int64_t n, Rng& rng) {
  require(n >= 1, "sample_weights: n must be >= 1");
  return sample_symmetric(law, n, rng);
}

Matrix sample_signed(const TailLaw& law, std::int64_t n, Rng& weight_rng, Rng& sign_rng) {
  Matrix x = sample_weights(law, n, weight_rng);
  const double theta = law.theta();
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      if (sign_rng.uniform() >= theta) {
        x(i, j) = -x(i, j);
        if (j != i) x(j, i) = x(i, j);
      }
    }
  }
  return x;
}

}  // namespace levyspec
