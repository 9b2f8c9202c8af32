#pragma once

// Domain values shared by the analytic, Monte Carlo and analysis layers.
//
// Quadrature convention: x1 + i x2 = a, so [x1, x2] = i/2 and a homodyne
// outcome on a coherent state has standard deviation exactly 1/2.

#include <cstdint>
#include <optional>
#include <string_view>

namespace cvqkd {

inline constexpr double kDefaultLossDbPerKm = 0.21;
inline constexpr double kDefaultEtaBob = 0.6636;
inline constexpr double kQuadratureStddev = 0.5;

// Alice/Bob/channel configuration.
struct ProtocolParams {
  double mu_a = 1.0;  // mean photon number of Alice's signal
  double x0 = 0.0;    // Bob's post-selection threshold
  double distance_km = 0.0;
  double loss_db_per_km = kDefaultLossDbPerKm;
  double eta_bob = kDefaultEtaBob;  // Bob's optics times homodyne efficiency

  void validate() const;

  // eta_c = 10^(-a l / 10)
  double channel_eta() const;
  // eta = eta_c * eta_bob
  double total_eta() const;
  // Mean photon number reaching Bob's homodyne detector, eta * mu_a.
  double received_intensity() const { return total_eta() * mu_a; }
};

// Eve's single-photon detectors.
struct EveDetector {
  double y0 = 0.0;       // dark-count probability per gate
  double epsilon = 1.0;  // detection efficiency

  void validate() const;
  static constexpr EveDetector perfect() { return {}; }
};

enum class AttackStrategy : std::uint8_t { kNone, kSpda, kSma };

std::string_view to_string(AttackStrategy s);
std::optional<AttackStrategy> parse_attack_strategy(std::string_view name);

struct AttackConfig {
  AttackStrategy strategy = AttackStrategy::kNone;
  // Intensity of Eve's resent pulse as seen at Bob's homodyne input, i.e.
  // already multiplied by eta_bob. The raw |alpha_e|^2 is never stored.
  double mu_e = 0.0;
  EveDetector detector{};  // SPDA only

  void validate() const;
};

// |sqrt(intensity) e^{i k pi/2}>. Vacuum is intensity 0.
struct CoherentSignal {
  double intensity = 0.0;
  int phase_index = 0;  // k in {0,1,2,3}

  bool is_vacuum() const { return intensity == 0.0; }
  double phase() const;
  void validate() const;

  static constexpr CoherentSignal vacuum() { return {}; }
};

// Which quadrature Bob measured relative to Alice's encoding.
enum class Basis : std::uint8_t { kCorrect, kWrong };

std::string_view to_string(Basis b);

// Distribution of Eve's resent state conditioned on Alice sending |alpha>.
// Holds both the SPDA mixture (with vacuum) and the SMA mixture (p_vac = 0).
struct ResendMixture {
  double p_plus = 0.0;     // |alpha_e>
  double p_minus = 0.0;    // |-alpha_e>
  double p_plus_i = 0.0;   // |i alpha_e>
  double p_minus_i = 0.0;  // |-i alpha_e>
  double p_vac = 0.0;      // |0>

  double sum() const { return p_plus + p_minus + p_plus_i + p_minus_i + p_vac; }
  // Mass whose correct-basis outcome density is centred on zero.
  double p_zero_mean() const { return p_plus_i + p_minus_i + p_vac; }

  void validate(double tolerance = 1e-12) const;

  static constexpr ResendMixture identity() { return {1.0, 0.0, 0.0, 0.0, 0.0}; }
};

// Fiber transmittance 10^(-a l / 10). Throws DomainError for l < 0 or a <= 0.
double channel_transmittance(double distance_km, double loss_db_per_km);

// Density of a homodyne outcome x when measuring a coherent state of the given
// amplitude at relative phase phase_diff:
//   sqrt(2/pi) exp(-2 (x - amplitude cos(phase_diff))^2)
double quadrature_pdf(double x, double amplitude, double phase_diff);

// Same density parameterised directly by its mean.
double gaussian_quadrature_pdf(double x, double mean);

}  // namespace cvqkd
