#pragma once

#include <functional>

namespace cvqkd::detail {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws NumericalError with the
// interval, reached error estimate and tolerance when abs_tol is not met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol);

}  // namespace cvqkd::detail
