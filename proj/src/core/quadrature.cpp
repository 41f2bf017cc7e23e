#include "core/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "core/errors.hpp"

namespace levyspec {

namespace {

constexpr double kRelTarget = 1e-12;
constexpr double kRelSlack = 1e-10;

QuadResult checked(const char* what, double value, double error, double l1, double abs_tol) {
  if (!std::isfinite(value) || !(error <= std::max(abs_tol, kRelSlack * l1))) {
    std::ostringstream msg;
    msg.precision(3);
    msg << what << ": quadrature did not converge (value " << value << ", error estimate " << error
        << ", tolerance " << abs_tol << ")";
    throw NumericError(msg.str());
  }
  return {value, error, l1};
}

// Boost throws on some failures (e.g. non-finite samples); fold those in.
template <class Fn>
QuadResult guarded(const char* what, double abs_tol, Fn&& run) {
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = run(&error, &l1);
  } catch (const std::exception& e) {
    throw NumericError(std::string(what) + ": " + e.what());
  }
  return checked(what, value, error, l1, abs_tol);
}

}  // namespace

QuadResult integrate_half_line(const std::function<double(double)>& f, double abs_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  return guarded("integrate_half_line", abs_tol, [&](double* err, double* l1) {
    return rule.integrate(f, kRelTarget, err, l1);
  });
}

QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  require(a < b, "integrate_interval: need a < b");
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return guarded("integrate_interval", abs_tol, [&](double* err, double* l1) {
    return rule.integrate(f, a, b, kRelTarget, err, l1);
  });
}

QuadResult integrate_real_line(const std::function<double(double)>& f, double abs_tol) {
  thread_local boost::math::quadrature::sinh_sinh<double> rule;
  return guarded("integrate_real_line", abs_tol, [&](double* err, double* l1) {
    return rule.integrate(f, kRelTarget, err, l1);
  });
}

}  // namespace levyspec
