#include "core/rde.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "core/errors.hpp"

namespace levyspec {

namespace {

void require_beta(double beta, const char* what) {
  require(beta > 0.0 && beta < 1.0, std::string(what) + ": beta must lie in (0,1)");
}

}  // namespace

double rde_gamma_product(double beta) {
  require_beta(beta, "rde_gamma_product");
  return std::tgamma(beta + 1.0) * std::tgamma(1.0 - beta);
}

double phi(double y, double t, double beta, double tol) {
  require_beta(beta, "phi");
  require(y >= 0.0 && t >= 0.0, "phi: y and t must be >= 0");
  require(y > 0.0 || t > 0.0, "phi: (y, t) = (0, 0) is not integrable");
  if (t == 0.0) return 1.0 / (rde_gamma_product(beta) * y);
  if (y == 0.0) return std::pow(t, -beta);
  // s = x^beta turns the integral into Gamma(beta+1)^{-1} int exp(-t s^{1/beta} - c y s) ds.
  const double c = std::tgamma(1.0 - beta) * y;
  const double inv_beta = 1.0 / beta;
  const auto r = integrate_half_line(
      [&](double s) { return std::exp(-t * std::pow(s, inv_beta) - c * s); }, tol);
  return r.value / std::tgamma(beta + 1.0);
}

FixedPoint solve_q(double t, double beta, double tol) {
  require_beta(beta, "solve_q");
  require(t >= 0.0, "solve_q: t must be >= 0");
  require(tol > 0.0, "solve_q: tol must be > 0");
  const double bound = 1.0 / std::sqrt(rde_gamma_product(beta));
  if (t == 0.0) return {bound, 0.0, 0};

  double lo = 0.0;
  double hi = 1.01 * bound;
  const double f_hi = phi(hi, t, beta) - hi;
  if (!(f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "solve_q: no sign change on (0, " << hi << "] at t=" << t << " (phi - y = " << f_hi << ")";
    throw NumericError(msg.str());
  }
  double mid = 0.5 * (lo + hi);
  double f_mid = 0.0;
  int it = 0;
  for (; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    f_mid = phi(mid, t, beta) - mid;
    if (f_mid > 0.0) lo = mid; else hi = mid;
    if (std::abs(f_mid) < tol && hi - lo < tol) break;
  }
  if (!(std::abs(f_mid) < tol)) {
    std::ostringstream msg;
    msg << "solve_q: bisection stalled at residual " << std::abs(f_mid) << " (t=" << t << ")";
    throw NumericError(msg.str());
  }
  return {mid, std::abs(f_mid), it + 1};
}

double expected_g(double t, double beta, double q, double tol) {
  require_beta(beta, "expected_g");
  require(t >= 0.0 && q >= 0.0, "expected_g: t and q must be >= 0");
  const double lambda = std::tgamma(1.0 - beta) * q;
  if (t == 0.0) {
    require(q > 0.0, "expected_g: q must be > 0 at t = 0");
    return std::tgamma(1.0 + 1.0 / beta) * std::pow(lambda, -1.0 / beta);
  }
  // u = t x
  const auto r = integrate_half_line(
      [&](double u) { return std::exp(-u - lambda * std::pow(u / t, beta)); }, tol * t);
  return r.value / t;
}

double g_deficit(double t, double beta, double q, double tol) {
  require_beta(beta, "g_deficit");
  require(t > 0.0 && q >= 0.0, "g_deficit: need t > 0 and q >= 0");
  const double lambda = std::tgamma(1.0 - beta) * q;
  const auto r = integrate_half_line(
      [&](double u) { return std::exp(-u) * -std::expm1(-lambda * std::pow(u / t, beta)); }, tol * t);
  return r.value / t;
}

DensityAtZero density_at_zero(double alpha) {
  require(alpha > 0.0 && alpha < 2.0, "density_at_zero: alpha must lie in (0,2)");
  const double beta = 0.5 * alpha;
  const double q0 = solve_q(0.0, beta).q;
  DensityAtZero d{};
  d.from_fixed_point = expected_g(0.0, beta, q0) / std::numbers::pi;
  d.displayed_formula = std::tgamma(1.0 + 2.0 / alpha) *
                      std::pow(std::tgamma(1.0 - beta) / std::tgamma(1.0 + beta), 1.0 / alpha) /
                      std::numbers::pi;
  return d;
}

TailConstant tail_constant(double alpha) {
  require(alpha > 0.0 && alpha < 2.0, "tail_constant: alpha must lie in (0,2)");
  // Fold (1, inf) onto (0, 1) with x -> 1/x.
  const auto r = integrate_interval(
      [&](double u) { return (std::pow(u, 1.0 - alpha) + std::pow(u, alpha - 1.0)) / (1.0 + u * u); },
      0.0, 1.0, 1e-11);
  return {2.0 * alpha * r.value, alpha * std::numbers::pi / std::sin(0.5 * std::numbers::pi * alpha)};
}

QuadResult gamma2_quadrature(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "gamma2_quadrature: alpha must lie in (0,1)");
  double inner_error = 0.0;
  const auto inner = [&](double u) {
    const double c = std::pow(u, alpha) + std::pow(1.0 - u, alpha);
    // r = e^v: int r^{alpha-1} e^{-c r^alpha} dr = int e^{alpha v} e^{-c e^{alpha v}} dv.
    const auto r = integrate_real_line(
        [&](double v) {
          const double av = alpha * v;
          if (av > 50.0) return 0.0;
          return std::exp(av - c * std::exp(av));
        },
        1e-11);
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };
  const auto outer = integrate_interval(inner, 0.0, 1.0, 1e-10);
  const double pref = alpha * std::tgamma(2.0 - alpha) / std::tgamma(1.0 - alpha);
  return {pref * outer.value, pref * (outer.error + inner_error), pref * outer.l1};
}

double stable_laplace(double beta, double t) {
  require_beta(beta, "stable_laplace");
  require(t >= 0.0, "stable_laplace: t must be >= 0");
  return std::exp(-std::pow(t, beta) * std::sqrt(std::tgamma(1.0 - beta) / std::tgamma(1.0 + beta)));
}

double stable_laplace_displayed(double beta, double t) {
  require_beta(beta, "stable_laplace_displayed");
  require(t >= 0.0, "stable_laplace_displayed: t must be >= 0");
  return std::exp(-std::pow(t, beta) * std::sqrt(std::tgamma(1.0 + beta) / std::tgamma(1.0 - beta)));
}

double psi_sum_sample(double beta, double y, std::int64_t terms, Rng& rng) {
  require_beta(beta, "psi_sum_sample");
  require(y >= 0.0, "psi_sum_sample: y must be >= 0");
  require(terms >= 1, "psi_sum_sample: terms must be >= 1");
  const double inv_beta = 1.0 / beta;
  double gamma = 0.0;
  double sum = 0.0;
  for (std::int64_t k = 0; k < terms; ++k) {
    gamma += rng.exponential();
    sum += std::pow(gamma, -inv_beta);
  }
  sum += std::pow(static_cast<double>(terms), 1.0 - inv_beta) / (inv_beta - 1.0);
  return y * sum;
}

RdeSolution solve_rde(double alpha, std::span<const double> t_grid, const RdeOptions& options, int jobs) {
  require(alpha > 0.0 && alpha <= kRdeMaxAlpha, "solve_rde: alpha must lie in (0, 1.95]");
  for (double t : t_grid) require(t >= 0.0 && std::isfinite(t), "solve_rde: grid points must be finite and >= 0");
  RdeSolution sol;
  sol.alpha = alpha;
  sol.beta = 0.5 * alpha;
  sol.t_grid.assign(t_grid.begin(), t_grid.end());
  sol.quadrature_tol = options.quadrature_tol;
  const std::size_t n = t_grid.size();
  sol.Q.resize(n);
  sol.Eg.resize(n);
  sol.residual.resize(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        const auto fp = solve_q(sol.t_grid[i], sol.beta, options.fixed_point_tol);
        sol.Q[i] = fp.q;
        sol.residual[i] = fp.residual;
        sol.Eg[i] = expected_g(sol.t_grid[i], sol.beta, fp.q, options.quadrature_tol);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return sol;
}

double tauberian_ratio(double alpha, double t, const RdeOptions& options) {
  require(alpha > 0.0 && alpha < 2.0, "tauberian_ratio: alpha must lie in (0,2)");
  require(t > 0.0, "tauberian_ratio: t must be > 0");
  const double beta = 0.5 * alpha;
  const double q = solve_q(t, beta, options.fixed_point_tol).q;
  const double deficit = g_deficit(t, beta, q, options.quadrature_tol);
  const double delta = tail_constant(alpha).quadrature;
  return deficit / (0.5 * delta * std::pow(t, -alpha - 1.0));
}

}  // namespace levyspec
