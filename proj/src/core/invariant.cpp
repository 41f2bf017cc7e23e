#include "core/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "core/errors.hpp"

namespace levyspec {

double invariant_scale(const TailLaw& law, std::int64_t n) {
  const double alpha = law.alpha();
  require(alpha > 0.0 && alpha < 2.0, "invariant_scale: alpha must lie in (0,2)");
  require(n >= 1, "invariant_scale: n must be >= 1");
  if (alpha < 1.0) return 1.0;
  const auto m = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1) / 2;
  if (alpha == 1.0) return law.kappa_n(m);
  return law.kappa_n(m) * law.mean();
}

RankedInvariant ranked_stats(const Vector& rho, const TailLaw& law, std::int64_t k) {
  const std::int64_t n = rho.size();
  require(n >= 1, "ranked_stats: empty row-sum vector");
  require(k >= 1 && k <= n, "ranked_stats: need 1 <= k <= n");
  require(law.alpha() < 2.0, "ranked_stats: alpha must lie in (0,2)");
  const double total = rho.sum();
  require(total > 0.0 && std::isfinite(total), "ranked_stats: row sums must have a positive finite total");

  RankedInvariant r;
  r.n = n;
  r.rho_tilde.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) r.rho_tilde[static_cast<std::size_t>(i)] = rho(i) / total;
  std::sort(r.rho_tilde.begin(), r.rho_tilde.end(), std::greater<>());
  const auto m = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1) / 2;
  r.b_n = law.a_n(m);
  r.scale = invariant_scale(law, n);
  r.scaled_top.resize(static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j) {
    r.scaled_top[static_cast<std::size_t>(j)] = r.scale * r.rho_tilde[static_cast<std::size_t>(j)];
  }
  return r;
}

RankedInvariant ranked_stats(const WeightedEnsemble& ensemble, const TailLaw& law, std::int64_t k) {
  return ranked_stats(ensemble.rho, law, k);
}

std::vector<double> ppp_top_reference(double alpha, std::int64_t k, Rng& rng) {
  require(alpha > 0.0, "ppp_top_reference: alpha must be > 0");
  require(k >= 1, "ppp_top_reference: k must be >= 1");
  std::vector<double> x(static_cast<std::size_t>(k));
  double gamma = 0.0;
  for (auto& v : x) {
    gamma += rng.exponential();
    v = std::pow(gamma, -1.0 / alpha);
  }
  return x;
}

double pairing_ratio(const RankedInvariant& r, std::int64_t j) {
  require(j >= 1 && 2 * j <= r.n, "pairing_ratio: need 1 <= j <= n/2");
  return r.rho_tilde[static_cast<std::size_t>(2 * j - 2)] / r.rho_tilde[static_cast<std::size_t>(2 * j - 1)];
}

double ppp_sum_sample(double alpha, std::int64_t terms, Rng& rng) {
  require(alpha > 0.0 && alpha < 1.0, "ppp_sum_sample: alpha must lie in (0,1)");
  require(terms >= 1, "ppp_sum_sample: terms must be >= 1");
  const double inv_alpha = 1.0 / alpha;
  double gamma = 0.0;
  double sum = 0.0;
  for (std::int64_t j = 0; j < terms; ++j) {
    gamma += rng.exponential();
    sum += std::pow(gamma, -inv_alpha);
  }
  return sum + std::pow(static_cast<double>(terms), 1.0 - inv_alpha) / (inv_alpha - 1.0);
}

double ppp_sum_laplace(double alpha, double u) {
  require(alpha > 0.0 && alpha < 1.0, "ppp_sum_laplace: alpha must lie in (0,1)");
  require(u >= 0.0, "ppp_sum_laplace: u must be >= 0");
  return std::exp(-std::tgamma(1.0 - alpha) * std::pow(u, alpha));
}

}  // namespace levyspec
