#include "cvqkd/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvqkd/errors.hpp"
#include "quadrature.hpp"

namespace cvqkd::analytic {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

BerResult make_ber(double conclusive, double error_mass) {
  if (!(conclusive > 0.0)) throw NoConclusiveEvents();
  return {conclusive, error_mass / conclusive};
}

double gaussian_mass(double mean, double lo, double hi) {
  return 0.5 * (erfc(kSqrt2 * (lo - mean)) - erfc(kSqrt2 * (hi - mean)));
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw DomainError(std::string(what) + " must be >= 0");
}

}  // namespace

double conclusive_prob_coherent(double received_intensity, double x0) {
  require_nonnegative(received_intensity, "received intensity");
  require_nonnegative(x0, "x0");
  const double amp = std::sqrt(received_intensity);
  return 0.5 * (erfc(kSqrt2 * (x0 + amp)) + erfc(kSqrt2 * (x0 - amp)));
}

BerResult ber_coherent(double received_intensity, double x0) {
  const double conclusive = conclusive_prob_coherent(received_intensity, x0);
  const double amp = std::sqrt(received_intensity);
  // Alice's bit 0 read as 1: outcome below -x0.
  return make_ber(conclusive, 0.5 * erfc(kSqrt2 * (x0 + amp)));
}

double conclusive_prob_absence(const ProtocolParams& params) {
  params.validate();
  return conclusive_prob_coherent(params.received_intensity(), params.x0);
}

BerResult ber_absence(const ProtocolParams& params) {
  params.validate();
  return ber_coherent(params.received_intensity(), params.x0);
}

ResendMixture spda_mixture(double mu_a, const EveDetector& detector) {
  require_nonnegative(mu_a, "mu_a");
  detector.validate();
  const double y0 = detector.y0;
  const double eps = detector.epsilon;

  // Eve's local pulse in Alice's basis: all signal light exits at D1.
  const double p_d1 = 1.0 - (1.0 - y0) * std::exp(-2.0 * eps * mu_a);
  const double p_d2 = y0;
  // Orthogonal basis: the light splits evenly.
  const double p_d = 1.0 - (1.0 - y0) * std::exp(-eps * mu_a);

  ResendMixture mix;
  mix.p_plus = 0.5 * p_d1 * (1.0 - p_d2);
  mix.p_minus = 0.5 * (1.0 - p_d1) * p_d2;
  mix.p_plus_i = 0.5 * p_d * (1.0 - p_d);
  mix.p_minus_i = mix.p_plus_i;
  mix.p_vac =
      0.5 * ((1.0 - p_d1) * (1.0 - p_d2) + p_d1 * p_d2 + (1.0 - p_d) * (1.0 - p_d) + p_d * p_d);
  return mix;
}

ResendMixture sma_mixture(double mu_a) {
  require_nonnegative(mu_a, "mu_a");
  constexpr double kTol = 1e-9;
  constexpr double kSpan = 8.0;
  const double m = std::sqrt(mu_a / 2.0);

  // Marginal over x2 (mean 0) times conditional tail of x1 (mean m). The
  // integrands are even in x2, so fold onto [0, kSpan].
  const auto plus = [m](double t) {
    return 2.0 * gaussian_quadrature_pdf(t, 0.0) * 0.5 * erfc(kSqrt2 * (t - m));
  };
  const auto minus = [m](double t) {
    return 2.0 * gaussian_quadrature_pdf(t, 0.0) * 0.5 * erfc(kSqrt2 * (t + m));
  };
  // x2 > |x1|: marginal over x1 (mean m) times tail of x2 (mean 0).
  const auto perp = [m](double t) {
    return gaussian_quadrature_pdf(t, m) * 0.5 * erfc(kSqrt2 * std::abs(t));
  };

  ResendMixture mix;
  mix.p_plus = detail::integrate(plus, 0.0, kSpan, kTol).value;
  mix.p_minus = detail::integrate(minus, 0.0, kSpan, kTol).value;
  // The |x1| kink sits at 0; keep it on a panel boundary.
  const double lo = m - kSpan;
  const double hi = m + kSpan;
  mix.p_plus_i = detail::integrate(perp, lo, 0.0, kTol).value + detail::integrate(perp, 0.0, hi, kTol).value;
  mix.p_minus_i = mix.p_plus_i;
  mix.p_vac = 0.0;

  if (std::abs(mix.sum() - 1.0) > 1e-8) {
    throw NumericalError("SMA mixture does not normalise: P+ + P- + 2 P_perp = " +
                         std::to_string(mix.sum()));
  }
  return mix;
}

ResendMixture resend_mixture(double mu_a, const AttackConfig& attack) {
  switch (attack.strategy) {
    case AttackStrategy::kSpda: return spda_mixture(mu_a, attack.detector);
    case AttackStrategy::kSma: return sma_mixture(mu_a);
    case AttackStrategy::kNone: break;
  }
  return ResendMixture::identity();
}

double conclusive_prob_presence(const ResendMixture& mix, double mu_e, double x0) {
  require_nonnegative(mu_e, "mu_e");
  require_nonnegative(x0, "x0");
  const double amp = std::sqrt(mu_e);
  return 0.5 * (mix.p_plus + mix.p_minus) *
             (erfc(kSqrt2 * (x0 + amp)) + erfc(kSqrt2 * (x0 - amp))) +
         mix.p_zero_mean() * erfc(kSqrt2 * x0);
}

BerResult ber_presence(const ResendMixture& mix, double mu_e, double x0) {
  const double conclusive = conclusive_prob_presence(mix, mu_e, x0);
  const double amp = std::sqrt(mu_e);
  const double error_mass =
      0.5 * (mix.p_plus * erfc(kSqrt2 * (x0 + amp)) + mix.p_minus * erfc(kSqrt2 * (x0 - amp)) +
             mix.p_zero_mean() * erfc(kSqrt2 * x0));
  return make_ber(conclusive, error_mass);
}

double outcome_density_absence(const ProtocolParams& params, Basis basis, double x) {
  const double mean = basis == Basis::kCorrect ? std::sqrt(params.received_intensity()) : 0.0;
  return gaussian_quadrature_pdf(x, mean);
}

double outcome_density_presence(const ResendMixture& mix, double mu_e, Basis basis, double x) {
  const double amp = std::sqrt(mu_e);
  if (basis == Basis::kCorrect) {
    return mix.p_plus * gaussian_quadrature_pdf(x, amp) +
           mix.p_minus * gaussian_quadrature_pdf(x, -amp) +
           mix.p_zero_mean() * gaussian_quadrature_pdf(x, 0.0);
  }
  return mix.p_plus_i * gaussian_quadrature_pdf(x, amp) +
         mix.p_minus_i * gaussian_quadrature_pdf(x, -amp) +
         (mix.p_plus + mix.p_minus + mix.p_vac) * gaussian_quadrature_pdf(x, 0.0);
}

double outcome_mass_absence(const ProtocolParams& params, Basis basis, double lo, double hi) {
  const double mean = basis == Basis::kCorrect ? std::sqrt(params.received_intensity()) : 0.0;
  return gaussian_mass(mean, lo, hi);
}

double outcome_mass_presence(const ResendMixture& mix, double mu_e, Basis basis, double lo,
                             double hi) {
  const double amp = std::sqrt(mu_e);
  if (basis == Basis::kCorrect) {
    return mix.p_plus * gaussian_mass(amp, lo, hi) + mix.p_minus * gaussian_mass(-amp, lo, hi) +
           mix.p_zero_mean() * gaussian_mass(0.0, lo, hi);
  }
  return mix.p_plus_i * gaussian_mass(amp, lo, hi) + mix.p_minus_i * gaussian_mass(-amp, lo, hi) +
         (mix.p_plus + mix.p_minus + mix.p_vac) * gaussian_mass(0.0, lo, hi);
}

}  // namespace cvqkd::analytic
