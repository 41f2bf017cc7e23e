#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/quadrature.hpp"
#include "core/rng.hpp"

namespace levyspec {

// Scalar reduction of the recursive distributional equation on the
// imaginary axis, beta = alpha / 2. Q(t) = E g(it)^beta is the fixed point
// of y -> phi(y, t) and E g(it) = Im m(it) follows from it.

// Gamma(beta+1) Gamma(1-beta).
double rde_gamma_product(double beta);

// phi(y, t) = Gamma(beta)^{-1} int x^{beta-1} e^{-tx} e^{-x^beta Gamma(1-beta) y} dx.
// (y, t) = (0, 0) is rejected.
double phi(double y, double t, double beta, double tol = kQuadAbsTol);

struct FixedPoint {
  double q;
  double residual;  // |phi(q) - q|
  int iterations;
};

// Bisection for y = phi(y, t) on (0, 1.01 (Gamma(beta+1)Gamma(1-beta))^{-1/2}].
FixedPoint solve_q(double t, double beta, double tol = 1e-10);

// int_0^inf e^{-tx} e^{-x^beta Gamma(1-beta) q} dx; closed form at t = 0.
double expected_g(double t, double beta, double q, double tol = kQuadAbsTol);
// 1/t - expected_g(t), evaluated without cancellation; t > 0.
double g_deficit(double t, double beta, double q, double tol = kQuadAbsTol);

struct DensityAtZero {
  double from_fixed_point;      // E g(0) / pi
  double displayed_formula;  // (1/pi) Gamma(1+2/a) (Gamma(1-a/2)/Gamma(1+a/2))^{1/a}
};
DensityAtZero density_at_zero(double alpha);

struct TailConstant {
  double quadrature;   // 2 alpha int_0^inf x^{1-alpha} / (1 + x^2) dx
  double closed_form;  // alpha pi / sin(pi alpha / 2)
};
TailConstant tail_constant(double alpha);

// gamma_2 = alpha Gamma(2-alpha)/Gamma(1-alpha) int int e^{-t^a - s^a} (t+s)^{a-2} ds dt,
// integrated in polar-like coordinates t = r u, s = r (1-u).
QuadResult gamma2_quadrature(double alpha);

// E exp(-t S) for the fixed point 1/S of the map Psi, obtained from the
// exponential formula: exp(-t^beta Gamma(1-beta) Q(0)).
double stable_laplace(double beta, double t);
// The closed form with the Gamma ratio inverted,
// exp(-t^beta sqrt(Gamma(1+beta)/Gamma(1-beta))). Kept so both values can be reported.
double stable_laplace_displayed(double beta, double t);

// One draw of sum_k xi_k Y_k with xi the Poisson process of intensity
// beta x^{-beta-1} dx and Y_k = y constant. `terms` explicit points plus the
// integral tail.
double psi_sum_sample(double beta, double y, std::int64_t terms, Rng& rng);

struct RdeOptions {
  double fixed_point_tol = 1e-10;
  double quadrature_tol = kQuadAbsTol;
};

struct RdeSolution {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> t_grid;
  std::vector<double> Q;
  std::vector<double> Eg;
  std::vector<double> residual;
  double quadrature_tol = kQuadAbsTol;
};

inline constexpr double kRdeMaxAlpha = 1.95;

// Grid points are independent; jobs > 1 solves them on a thread pool.
RdeSolution solve_rde(double alpha, std::span<const double> t_grid, const RdeOptions& options = {},
                      int jobs = 1);

// (1/t - Eg(t)) / ((Delta(alpha)/2) t^{-alpha-1}), Delta by quadrature.
double tauberian_ratio(double alpha, double t, const RdeOptions& options = {});

}  // namespace levyspec
