#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/matrix_models.hpp"

using namespace levyspec;
using Catch::Approx;

namespace {

WeightedEnsemble sample_ensemble(double alpha, std::int64_t n, std::uint64_t stream) {
  Rng rng(5, stream);
  return build_ensemble(sample_weights(TailLaw(alpha), n, rng));
}

}  // namespace

TEST_CASE("kernel rows sum to one and S is symmetric") {
  const auto e = sample_ensemble(0.6, 120, 1);
  const auto n = e.n();
  for (std::int64_t i = 0; i < n; ++i) REQUIRE(std::abs(e.K.row(i).sum() - 1.0) <= 1e-12 * n);
  CHECK((e.S - e.S.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(reversibility_defect(e) <= 1e-12 * e.rho.maxCoeff());
}

TEST_CASE("invariant vectors are normalized and ranked") {
  const auto e = sample_ensemble(1.4, 80, 2);
  CHECK(e.rho_hat.sum() == Approx(1.0).epsilon(1e-13));
  CHECK(std::is_sorted(e.rho_ranked.begin(), e.rho_ranked.end(), std::greater<>()));
  std::vector<double> sorted(e.rho_hat.data(), e.rho_hat.data() + e.n());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  CHECK(sorted == e.rho_ranked);
}

TEST_CASE("K and S have the same spectrum") {
  const auto e = sample_ensemble(0.9, 30, 3);
  Eigen::SelfAdjointEigenSolver<Matrix> s(e.S, Eigen::EigenvaluesOnly);
  Eigen::EigenSolver<Matrix> k(e.K, false);
  std::vector<double> ks;
  for (int i = 0; i < k.eigenvalues().size(); ++i) {
    REQUIRE(std::abs(k.eigenvalues()(i).imag()) < 1e-9);
    ks.push_back(k.eigenvalues()(i).real());
  }
  std::sort(ks.begin(), ks.end());
  for (int i = 0; i < s.eigenvalues().size(); ++i) CHECK(ks[i] == Approx(s.eigenvalues()(i)).margin(1e-9));
}

TEST_CASE("zero rows become unit rows") {
  Matrix u = Matrix::Zero(3, 3);
  u(0, 1) = u(1, 0) = 2.0;
  u(1, 1) = 1.0;
  const auto e = build_ensemble(u);
  CHECK(e.K(2, 2) == 1.0);
  CHECK(e.K.row(2).sum() == 1.0);
  CHECK(e.S(2, 2) == 1.0);
  CHECK(e.K(0, 1) == 1.0);
  CHECK(e.K(1, 0) == Approx(2.0 / 3.0));
}

TEST_CASE("build rejects invalid weights") {
  Matrix asym = Matrix::Ones(2, 2);
  asym(0, 1) = 2.0;
  CHECK_THROWS_AS(build_ensemble(asym), PreconditionError);
  Matrix neg = Matrix::Ones(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(build_ensemble(neg), PreconditionError);
  CHECK_THROWS_AS(build_ensemble(Matrix::Ones(2, 3)), PreconditionError);
  CHECK_THROWS_AS(build_ensemble(Matrix::Ones(5, 5), 4), PreconditionError);
}

TEST_CASE("scaling modes") {
  const TailLaw law(1.5);
  const auto e = sample_ensemble(1.5, 50, 4);
  CHECK((scaled_matrix(e, law, ScalingMode::kMarkovUnscaled) - e.S).norm() == 0.0);
  CHECK((scaled_matrix(e, law, ScalingMode::kMarkovSqrtN) - std::sqrt(50.0) * e.S).norm() <= 1e-12);
  // kappa_50 = 50 / 50^{2/3}, times the weight mean 3.
  const double factor = 50.0 / std::pow(50.0, 2.0 / 3.0) * 3.0;
  CHECK(markov_kappa_factor(law, 50) == Approx(factor).epsilon(1e-13));
  CHECK((scaled_matrix(e, law, ScalingMode::kMarkovKappa) - factor * e.S).norm() <= 1e-10);
  CHECK_THROWS_AS(scaled_matrix(e, TailLaw(0.5), ScalingMode::kMarkovKappa), PreconditionError);
  CHECK_THROWS_AS(scaled_matrix(e, law, ScalingMode::kIidAn), PreconditionError);
  CHECK(markov_kappa_factor(TailLaw(1.0), 100) == Approx(std::log(100.0)));

  Matrix x = Matrix::Constant(4, 4, 8.0);
  CHECK(scaled_iid(x, TailLaw(0.5))(0, 0) == Approx(0.5));
}

TEST_CASE("scaling mode names") {
  CHECK(to_string(ScalingMode::kIidAn) == "iid");
  CHECK(to_string(ScalingMode::kMarkovKappa) == "markov-kappa");
  CHECK(to_string(ScalingMode::kMarkovSqrtN) == "markov-sqrtn");
  CHECK(to_string(ScalingMode::kMarkovUnscaled) == "markov");
}
