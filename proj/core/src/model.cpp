#include "cvqkd/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

void require(bool ok, const char* what, double value) {
  if (!ok) {
    throw DomainError(std::string(what) + " (got " + std::to_string(value) + ")");
  }
}

}  // namespace

void ProtocolParams::validate() const {
  require(std::isfinite(mu_a) && mu_a >= 0.0, "mu_a must be >= 0", mu_a);
  require(std::isfinite(x0) && x0 >= 0.0, "x0 must be >= 0", x0);
  require(std::isfinite(distance_km) && distance_km >= 0.0, "distance_km must be >= 0", distance_km);
  require(std::isfinite(loss_db_per_km) && loss_db_per_km > 0.0, "loss_db_per_km must be > 0",
          loss_db_per_km);
  require(eta_bob > 0.0 && eta_bob <= 1.0, "eta_bob must lie in (0, 1]", eta_bob);
}

double ProtocolParams::channel_eta() const {
  return channel_transmittance(distance_km, loss_db_per_km);
}

double ProtocolParams::total_eta() const { return channel_eta() * eta_bob; }

void EveDetector::validate() const {
  require(y0 >= 0.0 && y0 < 1.0, "dark count y0 must lie in [0, 1)", y0);
  require(epsilon > 0.0 && epsilon <= 1.0, "detector efficiency must lie in (0, 1]", epsilon);
}

std::string_view to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kNone: return "none";
    case AttackStrategy::kSpda: return "spda";
    case AttackStrategy::kSma: return "sma";
  }
  return "unknown";
}

std::optional<AttackStrategy> parse_attack_strategy(std::string_view name) {
  if (name == "none") return AttackStrategy::kNone;
  if (name == "spda") return AttackStrategy::kSpda;
  if (name == "sma") return AttackStrategy::kSma;
  return std::nullopt;
}

void AttackConfig::validate() const {
  require(std::isfinite(mu_e) && mu_e >= 0.0, "mu_e must be >= 0", mu_e);
  if (strategy == AttackStrategy::kSpda) detector.validate();
}

double CoherentSignal::phase() const { return phase_index * (std::numbers::pi / 2.0); }

void CoherentSignal::validate() const {
  require(std::isfinite(intensity) && intensity >= 0.0, "signal intensity must be >= 0", intensity);
  require(phase_index >= 0 && phase_index <= 3, "phase index must be in {0,1,2,3}", phase_index);
}

std::string_view to_string(Basis b) { return b == Basis::kCorrect ? "correct" : "wrong"; }

void ResendMixture::validate(double tolerance) const {
  for (double p : {p_plus, p_minus, p_plus_i, p_minus_i, p_vac}) {
    require(p >= 0.0 && p <= 1.0, "mixture component must lie in [0, 1]", p);
  }
  require(std::abs(sum() - 1.0) <= tolerance, "mixture components must sum to 1", sum());
}

double channel_transmittance(double distance_km, double loss_db_per_km) {
  require(std::isfinite(distance_km) && distance_km >= 0.0, "distance must be >= 0", distance_km);
  require(std::isfinite(loss_db_per_km) && loss_db_per_km > 0.0, "loss coefficient must be > 0",
          loss_db_per_km);
  return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

double gaussian_quadrature_pdf(double x, double mean) {
  constexpr double kNorm = 0.79788456080286535588;  // sqrt(2/pi)
  const double d = x - mean;
  return kNorm * std::exp(-2.0 * d * d);
}

double quadrature_pdf(double x, double amplitude, double phase_diff) {
  return gaussian_quadrature_pdf(x, amplitude * std::cos(phase_diff));
}

}  // namespace cvqkd
