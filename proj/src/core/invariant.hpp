#pragma once

#include <cstdint>
#include <vector>

#include "core/heavy_tail.hpp"
#include "core/matrix_models.hpp"
#include "core/rng.hpp"

namespace levyspec {

// Ranked invariant vector of the random walk and its alpha-dependent scaling.
struct RankedInvariant {
  std::int64_t n = 0;
  std::vector<double> rho_tilde;   // all n coordinates, descending, sum 1
  double b_n = 0.0;                // a_{m_n}, m_n = n(n+1)/2
  double scale = 1.0;              // factor applied to get scaled_top
  std::vector<double> scaled_top;  // first k coordinates times scale
};

// Scale factor for ranked coordinates: 1 for alpha < 1; kappa_{m_n} times the
// weight mean for alpha in (1,2); kappa_{m_n} = m_n w_{m_n} / a_{m_n} at 1.
double invariant_scale(const TailLaw& law, std::int64_t n);

RankedInvariant ranked_stats(const WeightedEnsemble& ensemble, const TailLaw& law, std::int64_t k);
// Same from row sums only.
RankedInvariant ranked_stats(const Vector& rho, const TailLaw& law, std::int64_t k);

// First k ranked points x_j = gamma_j^{-1/alpha} of the Poisson process with
// intensity alpha x^{-alpha-1} dx.
std::vector<double> ppp_top_reference(double alpha, std::int64_t k, Rng& rng);

// rho_tilde_{2j-1} / rho_tilde_{2j}, j >= 1.
double pairing_ratio(const RankedInvariant& r, std::int64_t j);

// One draw of sum_i x_i over the same process (alpha in (0,1)), using
// `terms` explicit points plus the integral tail.
double ppp_sum_sample(double alpha, std::int64_t terms, Rng& rng);

// exp(-Gamma(1-alpha) u^alpha).
double ppp_sum_laplace(double alpha, double u);

}  // namespace levyspec
