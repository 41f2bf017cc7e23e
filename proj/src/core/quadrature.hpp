#pragma once

#include <functional>

namespace levyspec {

struct QuadResult {
  double value;
  double error;  // estimate reported by the rule
  double l1;     // integral of |f|
};

// Defaults used by the rde module.
inline constexpr double kQuadAbsTol = 1e-9;

// int_0^inf f. Throws NumericError when the error estimate exceeds
// max(abs_tol, rel_slack * l1).
QuadResult integrate_half_line(const std::function<double(double)>& f, double abs_tol = kQuadAbsTol);

// int_a^b f, tolerating integrable endpoint singularities.
QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = kQuadAbsTol);

// int_{-inf}^{inf} f.
QuadResult integrate_real_line(const std::function<double(double)>& f, double abs_tol = kQuadAbsTol);

}  // namespace levyspec
