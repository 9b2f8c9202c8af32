#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvqkd/errors.hpp"

namespace cvqkd::detail {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kMaxDepth = 15;
  // Boost stops on error <= tol * L1. Our integrands are probability masses
  // (L1 <= 1), so a relative target a decade below abs_tol meets it; the
  // absolute error is verified below either way.
  const double rel_tol = std::max(abs_tol * 0.1, 1e-13);
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      gauss_kronrod<double, 15>::integrate(f, a, b, kMaxDepth, rel_tol, &error, &l1);
  if (!std::isfinite(value) || !(error <= abs_tol)) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge on [" << a << ", " << b
        << "]: error estimate " << error << " > tolerance " << abs_tol << " (value " << value
        << ", L1 " << l1 << ")";
    throw NumericalError(msg.str());
  }
  return {value, error};
}

}  // namespace cvqkd::detail
