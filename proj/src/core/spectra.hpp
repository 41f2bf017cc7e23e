#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "core/matrix_models.hpp"

namespace levyspec {

struct SampleMeta {
  double alpha = 0.0;
  double theta = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
};

// Eigenvalues of one scaled matrix, ascending.
struct SpectralSample {
  std::vector<double> eigenvalues;
  ScalingMode scaling = ScalingMode::kMarkovUnscaled;
  SampleMeta meta;

  std::int64_t n() const { return static_cast<std::int64_t>(eigenvalues.size()); }
};

struct EigenOptions {
  // Residual spot checks on 5 random eigenpairs. Needs eigenvectors, so it is
  // on by default only up to this dimension.
  std::int64_t residual_check_max_n = 512;
  bool force_residual_check = false;
  double residual_tolerance = 1e-8;
  std::uint64_t check_seed = 0;
};

SpectralSample eigensolve(const Matrix& M, const EigenOptions& options = {});

// (1/n) sum lambda^ell.
double esd_moment(const SpectralSample& s, int ell);

// (1/n) sum 1/(lambda - z), Im z > 0.
std::complex<double> stieltjes(const SpectralSample& s, std::complex<double> z);
std::complex<double> stieltjes(std::span<const double> eigenvalues, std::complex<double> z);

// One-based inclusive index window [floor(log n), floor(n - log n)] of the
// ascending spectrum, clamped to [1, n]. Returned zero-based, half-open.
struct IndexWindow {
  std::int64_t begin;
  std::int64_t end;
  std::int64_t size() const { return end - begin; }
};
IndexWindow trim_window(std::int64_t n);
std::vector<double> trimmed(const SpectralSample& s);

struct Histogram {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<std::int64_t> count;
  std::vector<double> density;  // count / (total * width)
  std::int64_t kept = 0;
  std::int64_t total = 0;
};

// Uniform bins over [min, max] of `values`; density normalized against
// `total` so that sum(width * density) = values.size() / total.
Histogram histogram_values(std::span<const double> values, std::int64_t total, std::int64_t bins);
// bins <= 0 selects ceil(sqrt(n)).
Histogram histogram(const SpectralSample& s, std::int64_t bins, bool trim);

// 1 - lambda_2 for a sample of the unscaled kernel.
double spectral_gap(const SpectralSample& s);

struct SchattenCheck {
  double lhs;  // sum_k |lambda_k|^r
  double rhs;  // sum_i (sum_j A_ij^2)^{r/2}
  bool holds;
};
SchattenCheck schatten_check(const Matrix& M, double r);

// Same as schatten_check but reuses an already computed spectrum of M.
SchattenCheck schatten_check(const Matrix& M, std::span<const double> eigenvalues, double r);

}  // namespace levyspec
