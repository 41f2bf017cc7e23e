#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "core/heavy_tail.hpp"

namespace levyspec {

inline constexpr std::int64_t kDefaultMaxDimension = 4096;

// Finite-n reversible random walk built from a symmetric weight matrix.
struct WeightedEnsemble {
  Matrix U;                       // weights
  Vector rho;                     // row sums
  Matrix K;                       // row-stochastic kernel, K_ij = U_ij / rho_i
  Matrix S;                       // U_ij / sqrt(rho_i rho_j); same spectrum as K
  Vector rho_hat;                 // rho / sum(rho)
  std::vector<double> rho_ranked;  // rho_hat, descending

  std::int64_t n() const { return U.rows(); }
};

// Rows with rho_i = 0 become unit rows in both K and S.
WeightedEnsemble build_ensemble(Matrix U, std::int64_t max_dimension = kDefaultMaxDimension);

enum class ScalingMode {
  kIidAn,           // a_n^{-1} X
  kMarkovKappa,     // kappa_n m S   (m = weight mean; see markov_kappa_factor)
  kMarkovSqrtN,     // sqrt(n) S
  kMarkovUnscaled,  // S
};

std::string_view to_string(ScalingMode mode);

// Multiplier applied to S in kMarkovKappa mode. For alpha in (1,2) the
// n/a_n normalization presumes unit-mean weights, so kappa_n is multiplied by
// the law's mean; at alpha = 1 kappa_n = n w_n / a_n already carries the truncated mean.
double markov_kappa_factor(const TailLaw& law, std::int64_t n);

// Symmetric matrix ready for the eigensolver. For kIidAn pass the signed
// entry matrix X; the Markov modes take the ensemble's S.
Matrix scaled_matrix(const WeightedEnsemble& ensemble, const TailLaw& law, ScalingMode mode);
// Law-free modes only (unscaled, sqrt(n)); used for finite-variance weights.
Matrix scaled_matrix(const WeightedEnsemble& ensemble, ScalingMode mode);
Matrix scaled_iid(const Matrix& X, const TailLaw& law);

// max_{i,j} |rho_i K_ij - rho_j K_ji|.
double reversibility_defect(const WeightedEnsemble& ensemble);

}  // namespace levyspec
