// Complementary error function.
//
// Three regimes, all with relative error below 1e-12 for |x| <= 10:
//   0 <= x < 0.5   alternating Maclaurin series of erf, erfc = 1 - erf
//   0.5 <= x < 2   positive-term series erf = 2/sqrt(pi) e^{-x^2} sum (2x^2)^n x / (2n+1)!!
//   x >= 2         Laplace continued fraction, modified Lentz evaluation
// Negative arguments use erfc(-x) = 2 - erfc(x).

#include <cmath>
#include <limits>

#include "cvqkd/analytic.hpp"
#include "cvqkd/errors.hpp"

namespace cvqkd::analytic {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kOneOverSqrtPi = 0.56418958354775628695;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// e^{-x^2} without the x^2 rounding error: split x = hi + lo with hi exact
// to 1/16 so hi*hi is exact.
double exp_minus_square(double x) {
  const double hi = std::trunc(x * 16.0) / 16.0;
  const double lo = x - hi;
  return std::exp(-hi * hi) * std::exp(-lo * (x + hi));
}

double erf_maclaurin(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const double contrib = term / (2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < kEps * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

double erf_positive_series(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 500; ++n) {
    term *= two_x2 / (2 * n + 1);
    sum += term;
    if (term < kEps * sum) break;
  }
  return kTwoOverSqrtPi * exp_minus_square(x) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_continued_fraction(double x) {
  constexpr double kTiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = kTiny;
    c = x + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return kOneOverSqrtPi * exp_minus_square(x) / f;
    }
  }
  throw NumericalError("erfc continued fraction did not converge");
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < 0.5) return 1.0 - erf_maclaurin(x);
  if (x < 2.0) return 1.0 - erf_positive_series(x);
  if (x > 27.5) return 0.0;
  return erfc_continued_fraction(x);
}

}  // namespace cvqkd::analytic
