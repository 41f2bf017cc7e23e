#include "core/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace levyspec {

namespace {

void require_symmetric_finite(const Matrix& M) {
  require(M.rows() == M.cols() && M.rows() >= 1, "eigensolve: matrix must be square and non-empty");
  require(M.allFinite(), "eigensolve: matrix has non-finite entries");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  require((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "eigensolve: matrix must be symmetric");
}

}  // namespace

SpectralSample eigensolve(const Matrix& M, const EigenOptions& options) {
  require_symmetric_finite(M);
  const std::int64_t n = M.rows();
  const bool check = options.force_residual_check || n <= options.residual_check_max_n;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      M, check ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolve: QR iteration did not converge");

  SpectralSample s;
  const Vector& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + n);

  if (check) {
    const double norm = std::max(M.norm(), 1e-300);
    Rng rng(options.check_seed, static_cast<std::uint64_t>(StreamRole::kResidualCheck));
    const int pairs = static_cast<int>(std::min<std::int64_t>(5, n));
    for (int p = 0; p < pairs; ++p) {
      const auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
      const Vector v = solver.eigenvectors().col(k);
      const double residual = (M * v - ev(k) * v).norm();
      if (residual > options.residual_tolerance * norm) {
        std::ostringstream msg;
        msg << "eigensolve: residual " << residual << " exceeds " << options.residual_tolerance
            << " * ||M|| for eigenpair " << k;
        throw NumericError(msg.str());
      }
    }
  }
  return s;
}

double esd_moment(const SpectralSample& s, int ell) {
  require(ell >= 0, "esd_moment: order must be >= 0");
  require(s.n() >= 1, "esd_moment: empty sample");
  double acc = 0.0;
  for (double x : s.eigenvalues) acc += std::pow(x, ell);
  return acc / static_cast<double>(s.n());
}

std::complex<double> stieltjes(std::span<const double> eigenvalues, std::complex<double> z) {
  require(z.imag() > 0.0, "stieltjes: Im z must be > 0");
  require(!eigenvalues.empty(), "stieltjes: empty sample");
  std::complex<double> acc = 0.0;
  for (double x : eigenvalues) acc += 1.0 / (x - z);
  return acc / static_cast<double>(eigenvalues.size());
}

std::complex<double> stieltjes(const SpectralSample& s, std::complex<double> z) {
  return stieltjes(std::span<const double>(s.eigenvalues), z);
}

IndexWindow trim_window(std::int64_t n) {
  const double log_n = std::log(static_cast<double>(n));
  auto first = static_cast<std::int64_t>(std::floor(log_n));
  auto last = static_cast<std::int64_t>(std::floor(static_cast<double>(n) - log_n));
  first = std::clamp<std::int64_t>(first, 1, n);
  last = std::clamp<std::int64_t>(last, first, n);
  return {first - 1, last};
}

std::vector<double> trimmed(const SpectralSample& s) {
  const IndexWindow w = trim_window(s.n());
  return {s.eigenvalues.begin() + w.begin, s.eigenvalues.begin() + w.end};
}

Histogram histogram_values(std::span<const double> values, std::int64_t total, std::int64_t bins) {
  require(bins >= 1, "histogram: bins must be >= 1");
  require(!values.empty(), "histogram: no values");
  require(total >= static_cast<std::int64_t>(values.size()), "histogram: total smaller than value count");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);

  Histogram h;
  h.kept = static_cast<std::int64_t>(values.size());
  h.total = total;
  h.count.assign(static_cast<std::size_t>(bins), 0);
  for (double x : values) {
    auto b = static_cast<std::int64_t>((x - lo) / width);
    b = std::clamp<std::int64_t>(b, 0, bins - 1);
    ++h.count[static_cast<std::size_t>(b)];
  }
  for (std::int64_t b = 0; b < bins; ++b) {
    const double left = lo + width * static_cast<double>(b);
    const double right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    h.left.push_back(left);
    h.right.push_back(right);
    h.density.push_back(static_cast<double>(h.count[static_cast<std::size_t>(b)]) /
                        (static_cast<double>(total) * (right - left)));
  }
  return h;
}

Histogram histogram(const SpectralSample& s, std::int64_t bins, bool trim) {
  const std::int64_t n = s.n();
  if (bins <= 0) bins = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  if (!trim) return histogram_values(s.eigenvalues, n, bins);
  const std::vector<double> kept = trimmed(s);
  return histogram_values(kept, n, bins);
}

double spectral_gap(const SpectralSample& s) {
  require(s.n() >= 2, "spectral_gap: needs n >= 2");
  return 1.0 - s.eigenvalues[static_cast<std::size_t>(s.n() - 2)];
}

SchattenCheck schatten_check(const Matrix& M, std::span<const double> eigenvalues, double r) {
  require(r > 0.0 && r <= 2.0, "schatten_check: r must lie in (0,2]");
  double lhs = 0.0;
  for (double x : eigenvalues) lhs += std::pow(std::abs(x), r);
  double rhs = 0.0;
  for (std::int64_t i = 0; i < M.rows(); ++i) rhs += std::pow(M.row(i).squaredNorm(), r / 2.0);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-10) + 1e-300};
}

SchattenCheck schatten_check(const Matrix& M, double r) {
  require(r > 0.0 && r <= 2.0, "schatten_check: r must lie in (0,2]");
  const SpectralSample s = eigensolve(M);
  return schatten_check(M, s.eigenvalues, r);
}

}  // namespace levyspec
