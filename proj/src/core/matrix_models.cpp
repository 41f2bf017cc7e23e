#include "core/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "core/errors.hpp"

namespace levyspec {

WeightedEnsemble build_ensemble(Matrix U, std::int64_t max_dimension) {
  const std::int64_t n = U.rows();
  require(n >= 1 && U.cols() == n, "build: weight matrix must be square with n >= 1");
  require(n <= max_dimension, "build: n exceeds the configured dimension cap");
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      require(std::isfinite(U(i, j)) && U(i, j) >= 0.0, "build: weights must be finite and >= 0");
      require(U(i, j) == U(j, i), "build: weight matrix must be symmetric");
    }
  }

  WeightedEnsemble e;
  e.rho = U.rowwise().sum();
  e.K = Matrix(n, n);
  e.S = Matrix(n, n);
  Vector inv_sqrt(n);
  for (std::int64_t i = 0; i < n; ++i) inv_sqrt(i) = e.rho(i) > 0.0 ? 1.0 / std::sqrt(e.rho(i)) : 0.0;

  for (std::int64_t i = 0; i < n; ++i) {
    if (e.rho(i) > 0.0) {
      e.K.row(i) = U.row(i) / e.rho(i);
    } else {
      e.K.row(i).setZero();
      e.K(i, i) = 1.0;
    }
  }
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = 0; i < n; ++i) e.S(i, j) = U(i, j) * (inv_sqrt(i) * inv_sqrt(j));
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (e.rho(i) == 0.0) {
      e.S.row(i).setZero();
      e.S.col(i).setZero();
      e.S(i, i) = 1.0;
    }
  }

  const double total = e.rho.sum();
  e.rho_hat = total > 0.0 ? Vector(e.rho / total) : Vector(Vector::Constant(n, 1.0 / n));
  e.rho_ranked.assign(e.rho_hat.data(), e.rho_hat.data() + n);
  std::sort(e.rho_ranked.begin(), e.rho_ranked.end(), std::greater<>());
  e.U = std::move(U);
  return e;
}

std::string_view to_string(ScalingMode mode) {
  switch (mode) {
    case ScalingMode::kIidAn: return "iid";
    case ScalingMode::kMarkovKappa: return "markov-kappa";
    case ScalingMode::kMarkovSqrtN: return "markov-sqrtn";
    case ScalingMode::kMarkovUnscaled: return "markov";
  }
  return "unknown";
}

double markov_kappa_factor(const TailLaw& law, std::int64_t n) {
  const double kappa = law.kappa_n(static_cast<std::uint64_t>(n));
  return law.alpha() > 1.0 ? kappa * law.mean() : kappa;
}

Matrix scaled_matrix(const WeightedEnsemble& ensemble, const TailLaw& law, ScalingMode mode) {
  const std::int64_t n = ensemble.n();
  switch (mode) {
    case ScalingMode::kMarkovUnscaled: return ensemble.S;
    case ScalingMode::kMarkovSqrtN: return std::sqrt(static_cast<double>(n)) * ensemble.S;
    case ScalingMode::kMarkovKappa:
      require(law.alpha() >= 1.0 && law.alpha() < 2.0, "markov-kappa scaling requires alpha in [1,2)");
      return markov_kappa_factor(law, n) * ensemble.S;
    case ScalingMode::kIidAn:
      throw PreconditionError("iid scaling applies to the signed matrix X; use scaled_iid");
  }
  throw PreconditionError("unknown scaling mode");
}

Matrix scaled_matrix(const WeightedEnsemble& ensemble, ScalingMode mode) {
  require(mode == ScalingMode::kMarkovUnscaled || mode == ScalingMode::kMarkovSqrtN,
          "scaling mode needs a tail law");
  if (mode == ScalingMode::kMarkovUnscaled) return ensemble.S;
  return std::sqrt(static_cast<double>(ensemble.n())) * ensemble.S;
}

Matrix scaled_iid(const Matrix& X, const TailLaw& law) {
  require(X.rows() == X.cols() && X.rows() >= 1, "scaled_iid: X must be square");
  return X / law.a_n(static_cast<std::uint64_t>(X.rows()));
}

double reversibility_defect(const WeightedEnsemble& e) {
  const std::int64_t n = e.n();
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      worst = std::max(worst, std::abs(e.rho(i) * e.K(i, j) - e.rho(j) * e.K(j, i)));
    }
  }
  return worst;
}

}  // namespace levyspec
