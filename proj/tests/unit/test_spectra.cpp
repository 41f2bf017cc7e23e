#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/spectra.hpp"

using namespace levyspec;
using Catch::Approx;

TEST_CASE("eigenvalues of a known matrix") {
  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  const auto s = eigensolve(m);
  REQUIRE(s.n() == 2);
  CHECK(s.eigenvalues[0] == Approx(1.0));
  CHECK(s.eigenvalues[1] == Approx(3.0));
  CHECK(esd_moment(s, 0) == 1.0);
  CHECK(esd_moment(s, 2) == Approx(5.0));
  // (1/2)(1/(1-i) + 1/(3-i))
  const auto g = stieltjes(s, {0.0, 1.0});
  const auto want = 0.5 * (1.0 / std::complex<double>(1.0, -1.0) + 1.0 / std::complex<double>(3.0, -1.0));
  CHECK(std::abs(g - want) < 1e-15);
  CHECK_THROWS_AS(stieltjes(s, {0.0, 0.0}), PreconditionError);
  CHECK(spectral_gap(s) == Approx(0.0).margin(1e-15));
}

TEST_CASE("eigensolve rejects bad input") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK_THROWS_AS(eigensolve(m), PreconditionError);
  m << 1, NAN, NAN, 1;
  CHECK_THROWS_AS(eigensolve(m), PreconditionError);
}

TEST_CASE("residual spot checks run when forced") {
  Rng rng(1, 1);
  const auto e = build_ensemble(sample_weights(TailLaw(0.8), 100, rng));
  EigenOptions opt;
  opt.force_residual_check = true;
  opt.residual_check_max_n = 0;
  const auto s = eigensolve(e.S, opt);
  CHECK(s.eigenvalues.back() == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("trim window keeps indices floor(log n) .. floor(n - log n)") {
  // n = 100: log n = 4.605, keep 4..95 one-based.
  const auto w = trim_window(100);
  CHECK(w.begin == 3);
  CHECK(w.end == 95);
  CHECK(w.size() == 92);
  const auto one = trim_window(1);
  CHECK(one.size() == 1);
  const auto two = trim_window(2);
  CHECK(two.begin == 0);
  CHECK(two.end == 1);
}

TEST_CASE("histogram mass equals kept fraction") {
  SpectralSample s;
  for (int i = 0; i < 100; ++i) s.eigenvalues.push_back(std::sin(i * 0.37));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  const auto h = histogram(s, 0, true);
  CHECK(h.count.size() == 10);
  CHECK(h.kept == 92);
  CHECK(h.total == 100);
  double mass = 0.0;
  for (std::size_t b = 0; b < h.count.size(); ++b) mass += h.density[b] * (h.right[b] - h.left[b]);
  CHECK(mass == Approx(0.92).epsilon(1e-12));
  CHECK(std::accumulate(h.count.begin(), h.count.end(), std::int64_t{0}) == 92);
  const auto full = histogram(s, 7, false);
  CHECK(full.kept == 100);
}

TEST_CASE("histogram of a constant sample") {
  const std::vector<double> v{2.0, 2.0};
  const auto h = histogram_values(v, 2, 4);
  CHECK(h.left.front() == 1.5);
  CHECK(h.right.back() == 2.5);
}

TEST_CASE("Schatten bound holds on sampled kernels") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    Rng rng(8, static_cast<std::uint64_t>(alpha * 10));
    const auto e = build_ensemble(sample_weights(TailLaw(alpha), 60, rng));
    const auto s = eigensolve(e.S);
    for (double r : {0.5, 1.0, 2.0}) {
      const auto c = schatten_check(e.S, s.eigenvalues, r);
      CHECK(c.holds);
    }
    // r = 2 is an identity: sum lambda^2 = ||S||_F^2.
    CHECK(schatten_check(e.S, s.eigenvalues, 2.0).lhs == Approx(e.S.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("Markov spectra lie in [-1,1] with top eigenvalue 1") {
  const auto s = sample_spectrum(TailLaw(0.5), 200, ScalingMode::kMarkovUnscaled, 3, 0);
  CHECK(s.eigenvalues.back() == Approx(1.0).epsilon(1e-10));
  CHECK(s.eigenvalues.front() >= -1.0 - 1e-10);
  CHECK(spectral_gap(s) > 0.0);
}

TEST_CASE("replication sampling is reproducible") {
  const auto a = sample_spectrum(TailLaw(1.2, 0.5), 50, ScalingMode::kIidAn, 4, 2);
  const auto b = sample_spectrum(TailLaw(1.2, 0.5), 50, ScalingMode::kIidAn, 4, 2);
  CHECK(a.eigenvalues == b.eigenvalues);
  const auto c = sample_spectrum(TailLaw(1.2, 0.5), 50, ScalingMode::kIidAn, 4, 3);
  CHECK(a.eigenvalues != c.eigenvalues);
}

TEST_CASE("row sums match the sampled weight matrix") {
  const TailLaw law(0.9);
  const Vector rho = sample_row_sums(law, 40, 6, 1);
  Rng rng = Rng::for_replication(6, 1, StreamRole::kWeights);
  const Matrix u = sample_weights(law, 40, rng);
  CHECK((rho - u.rowwise().sum()).cwiseAbs().maxCoeff() <= 1e-9 * rho.maxCoeff());
}
