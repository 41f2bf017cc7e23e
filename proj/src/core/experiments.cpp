#include "core/experiments.hpp"

#include "core/errors.hpp"

namespace levyspec {

namespace {

EigenOptions with_check_seed(EigenOptions options, std::uint64_t seed, std::uint64_t rep) {
  if (options.check_seed == 0) {
    options.check_seed = Rng::for_replication(seed, rep, StreamRole::kResidualCheck)();
  }
  return options;
}

}  // namespace

Matrix sample_model_matrix(const TailLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                           std::uint64_t rep) {
  require(n >= 1, "sample_model_matrix: n must be >= 1");
  Rng weights = Rng::for_replication(seed, rep, StreamRole::kWeights);
  if (mode == ScalingMode::kIidAn) {
    Rng signs = Rng::for_replication(seed, rep, StreamRole::kSigns);
    return scaled_iid(sample_signed(law, n, weights, signs), law);
  }
  if (mode == ScalingMode::kMarkovKappa) {
    require(law.alpha() >= 1.0 && law.alpha() < 2.0, "markov-kappa scaling requires alpha in [1,2)");
  }
  return scaled_matrix(build_ensemble(sample_weights(law, n, weights)), law, mode);
}

Matrix sample_model_matrix(const UniformLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                           std::uint64_t rep) {
  require(n >= 1, "sample_model_matrix: n must be >= 1");
  require(mode == ScalingMode::kMarkovUnscaled || mode == ScalingMode::kMarkovSqrtN,
          "finite-variance weights support the markov and markov-sqrtn scalings only");
  Rng weights = Rng::for_replication(seed, rep, StreamRole::kWeights);
  return scaled_matrix(build_ensemble(sample_symmetric(law, n, weights)), mode);
}

SpectralSample sample_spectrum(const TailLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                               std::uint64_t rep, const EigenOptions& options) {
  SpectralSample s = eigensolve(sample_model_matrix(law, n, mode, seed, rep), with_check_seed(options, seed, rep));
  s.scaling = mode;
  s.meta = {law.alpha(), law.theta(), seed, rep};
  return s;
}

SpectralSample sample_spectrum(const UniformLaw& law, std::int64_t n, ScalingMode mode, std::uint64_t seed,
                               std::uint64_t rep, const EigenOptions& options) {
  SpectralSample s = eigensolve(sample_model_matrix(law, n, mode, seed, rep), with_check_seed(options, seed, rep));
  s.scaling = mode;
  s.meta = {2.0, 1.0, seed, rep};
  return s;
}

Vector sample_row_sums(const TailLaw& law, std::int64_t n, std::uint64_t seed, std::uint64_t rep) {
  require(n >= 1, "sample_row_sums: n must be >= 1");
  Rng weights = Rng::for_replication(seed, rep, StreamRole::kWeights);
  Vector rho = Vector::Zero(n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      const double x = law.sample(weights);
      rho(i) += x;
      if (j != i) rho(j) += x;
    }
  }
  return rho;
}

PwitTruncation sample_tree(const PwitShape& shape, std::uint64_t seed, std::uint64_t rep,
                           const Materialization& m) {
  return sample_tree(shape, Rng::for_replication(seed, rep, StreamRole::kTree), m);
}

}  // namespace levyspec
