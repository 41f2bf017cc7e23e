#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/heavy_tail.hpp"
#include "core/stats.hpp"

using namespace levyspec;
using Catch::Approx;

TEST_CASE("tail function values") {
  CHECK(TailLaw(0.5).tail(4.0) == Approx(0.5).epsilon(1e-15));
  CHECK(TailLaw(1.0).tail(1.0) == 1.0);
  CHECK(TailLaw(2.0).tail(10.0) == Approx(0.01).epsilon(1e-15));
  CHECK(TailLaw(1.0).tail(0.3) == 1.0);
  CHECK_THROWS_AS(TailLaw(1.0).tail(-1.0), PreconditionError);
}

TEST_CASE("quantile values") {
  CHECK(TailLaw(0.5).quantile(0.25) == Approx(16.0).epsilon(1e-15));
  CHECK(TailLaw(1.0).quantile(1.0) == 1.0);
  CHECK(TailLaw(2.0).quantile(0.01) == Approx(10.0).epsilon(1e-15));
  CHECK_THROWS_AS(TailLaw(1.0).quantile(0.0), PreconditionError);
  CHECK_THROWS_AS(TailLaw(1.0).quantile(-0.5), PreconditionError);
}

TEST_CASE("law parameters are validated") {
  CHECK_THROWS_AS(TailLaw(0.0), PreconditionError);
  CHECK_THROWS_AS(TailLaw(-1.0), PreconditionError);
  CHECK_THROWS_AS(TailLaw(1.0, 1.5), PreconditionError);
  CHECK_THROWS_AS(TailLaw(1.0, -0.1), PreconditionError);
  CHECK_NOTHROW(TailLaw(3.0, 0.0));
}

TEST_CASE("scaling sequence a_n") {
  CHECK(TailLaw(0.5).a_n(100) == Approx(10000.0).epsilon(1e-14));
  CHECK(TailLaw(1.0).a_n(1) == 1.0);
  CHECK(TailLaw(1.5).a_n(64) == Approx(16.0).epsilon(1e-14));
  const TailLaw law(0.7);
  for (std::uint64_t n = 1; n < 2000; ++n) REQUIRE(law.a_n(n) <= law.a_n(n + 1));
}

TEST_CASE("truncated mean w_n") {
  CHECK(TailLaw(1.0).w_n(100) == Approx(std::log(100.0)).epsilon(1e-14));
  CHECK(TailLaw(1.0).w_n(1) == 0.0);
  CHECK(TailLaw(0.5).w_n(16) == Approx(15.0).epsilon(1e-14));
  // int_1^{a} x alpha x^{-alpha-1} dx at alpha = 1.5, n = 64: a = 16.
  CHECK(TailLaw(1.5).w_n(64) == Approx(3.0 * (1.0 - 0.25)).epsilon(1e-14));
}

TEST_CASE("kappa_n") {
  CHECK(TailLaw(1.5).kappa_n(64) == Approx(4.0).epsilon(1e-14));
  CHECK(TailLaw(1.0).kappa_n(100) == Approx(std::log(100.0)).epsilon(1e-14));
  CHECK(TailLaw(1.0).kappa_n(1) == 0.0);
  CHECK_THROWS_AS(TailLaw(0.5).kappa_n(10), PreconditionError);
  CHECK_THROWS_AS(TailLaw(2.0).kappa_n(10), PreconditionError);
}

TEST_CASE("truncated moment closed form") {
  const TailLaw one(1.0);
  const double a = one.a_n(10000);
  const double ratio = one.truncated_moment(2.0, a) / (1.0 * a * a / 10000.0);
  CHECK(std::abs(ratio - 1.0) <= 1e-4 + 1e-12);
  CHECK(one.truncated_moment(2.0, 1.0) == 0.0);
  CHECK(TailLaw(0.5).truncated_moment(1.0, 4.0) == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(one.truncated_moment(1.0, 4.0), PreconditionError);
  CHECK_THROWS_AS(one.truncated_moment(0.5, 4.0), PreconditionError);
}

TEST_CASE("truncated second moment is asymptotically alpha/(2-alpha) a_n^2 / n") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const TailLaw law(alpha);
    for (std::uint64_t n : {10000ULL, 1000000000000ULL}) {
      const double a = law.a_n(n);
      const double scaled = law.truncated_moment(2.0, a) * static_cast<double>(n) / (a * a);
      // Exact for the built-in law: the lower limit 1 leaves a^{alpha-2}.
      CHECK(scaled / (alpha / (2.0 - alpha)) == Approx(1.0 - std::pow(a, alpha - 2.0)).epsilon(1e-10));
      if (n > 10000) CHECK(std::abs(scaled / (alpha / (2.0 - alpha)) - 1.0) < 0.01);
    }
  }
}

TEST_CASE("quantile inverts the tail") {
  for (double alpha : {0.25, 1.0, 1.7}) {
    const TailLaw law(alpha);
    for (double t : {1.0, 1.5, 10.0, 1234.5, 1e6}) {
      CHECK(law.quantile(law.tail(t)) == Approx(t).epsilon(1e-12));
    }
  }
}

TEST_CASE("weight matrices are symmetric, nonnegative and reproducible") {
  const TailLaw law(0.8);
  Rng r1(3, 4), r2(3, 4);
  const Matrix u = sample_weights(law, 40, r1);
  const Matrix v = sample_weights(law, 40, r2);
  CHECK((u - u.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(u.minCoeff() >= 1.0);
  CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("empirical tail at a_n matches 1/n") {
  const TailLaw law(1.3);
  const std::uint64_t n = 100;
  const double a = law.a_n(n);
  Rng rng(11, 0);
  const int draws = 100000;
  int above = 0;
  for (int i = 0; i < draws; ++i) above += law.sample(rng) > a;
  const double p = 1.0 / n;
  CHECK(std::abs(above / double(draws) - p) < 3.0 * std::sqrt(p * (1 - p) / draws));
}

TEST_CASE("signs follow theta") {
  const std::int64_t n = 60;
  {
    Rng w(1, 1), s(1, 2);
    CHECK(sample_signed(TailLaw(1.0, 1.0), n, w, s).minCoeff() > 0.0);
  }
  {
    Rng w(1, 1), s(1, 2);
    CHECK(sample_signed(TailLaw(1.0, 0.0), n, w, s).maxCoeff() < 0.0);
  }
  // About 10^5 upper-triangle entries.
  const std::int64_t m = 447;
  Rng w(2, 1), s(2, 2);
  const Matrix x = sample_signed(TailLaw(1.0, 0.5), m, w, s);
  double positive = 0, total = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = i; j < m; ++j) {
      positive += x(i, j) > 0;
      total += 1;
    }
  }
  CHECK(std::abs(positive / total - 0.5) < 3.0 * std::sqrt(0.25 / total));
  CHECK((x - x.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scaled maxima are Frechet") {
  const double alpha = 0.7;
  const TailLaw law(alpha);
  const int n = 1000;
  const int reps = 5000;
  std::vector<double> maxima(reps);
  Rng rng(21, 0);
  for (int r = 0; r < reps; ++r) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, law.sample(rng));
    maxima[r] = m / law.a_n(n);
  }
  const double ks = ks_one_sample(maxima, [&](double x) { return std::exp(-std::pow(x, -alpha)); });
  CHECK(ks < 0.03);
}

TEST_CASE("order-statistics representation matches sorted draws") {
  const double alpha = 1.2;
  const TailLaw law(alpha);
  const int n = 2000;
  const int reps = 5000;
  std::vector<double> direct(reps), representation(reps);
  Rng a(31, 0), b(31, 1);
  for (int r = 0; r < reps; ++r) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, law.sample(a));
    direct[r] = m / law.a_n(n);
    double g1 = b.exponential();
    double g = g1;
    for (int i = 1; i <= n; ++i) g += b.exponential();
    representation[r] = law.quantile(g1 / g) / law.a_n(n);
  }
  CHECK(ks_two_sample(direct, representation) < 0.03);
}

TEST_CASE("uniform law moments") {
  const UniformLaw u;
  CHECK(u.mean() == 1.0);
  CHECK(u.variance() == Approx(1.0 / 12.0));
}
