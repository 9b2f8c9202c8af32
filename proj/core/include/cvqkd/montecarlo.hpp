#pragma once

// Pulse-by-pulse simulation of Alice -> (Eve) -> Bob.
//
// Determinism: pulses are processed in fixed-size chunks; chunk c draws from
// make_stream(seed, c). Tallies are integer sums, so any worker count gives
// bit-identical results.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cvqkd/model.hpp"

namespace cvqkd::montecarlo {

using Rng = std::mt19937_64;

// Independent stream derived from (seed, stream index) by splitmix64 mixing.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

inline constexpr std::uint64_t kChunkPulses = 1u << 16;

struct SessionStats {
  std::uint64_t n_sent = 0;
  std::uint64_t n_sifted = 0;      // Bob used Alice's basis
  std::uint64_t n_conclusive = 0;  // sifted and |x| > x0
  std::uint64_t n_errors = 0;      // conclusive with the wrong bit

  // n_errors / n_conclusive; nullopt when nothing was conclusive.
  std::optional<double> ber_estimate() const;
  // Binomial standard error of ber_estimate (0 when undefined).
  double ber_stderr() const;
  // n_conclusive / n_sifted; nullopt when nothing was sifted.
  std::optional<double> conclusive_rate() const;

  SessionStats& operator+=(const SessionStats& other);
  bool operator==(const SessionStats&) const = default;
};

struct HistogramSpec {
  double half_range = 5.0;  // bins cover [-half_range, half_range]
  std::size_t bins = 100;

  void validate() const;
};

// Uniformly binned outcomes, folded into the frame where Alice sent |alpha>
// (an outcome is negated when Alice's state for that basis pointed along
// the negative axis). The first and last bins are open-ended and also hold
// outcomes beyond the range, so sum(counts) == total.
class QuadratureHistogram {
 public:
  QuadratureHistogram(Basis basis, const HistogramSpec& spec);
  QuadratureHistogram(Basis basis, double lo, double hi, std::vector<std::uint64_t> counts);

  void add(double x);
  QuadratureHistogram& operator+=(const QuadratureHistogram& other);

  Basis basis() const { return basis_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double bin_width() const { return (hi_ - lo_) / static_cast<double>(counts_.size()); }
  std::size_t bins() const { return counts_.size(); }
  std::vector<double> edges() const;
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }

  bool operator==(const QuadratureHistogram&) const = default;

 private:
  Basis basis_;
  double lo_;
  double hi_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Homodyne outcome x_{bob_phase} on `signal` after losses:
// Gaussian with mean sqrt(effective_intensity) cos(bob_phase - signal.phase())
// and standard deviation 1/2. Vacuum signals have mean 0.
double sample_homodyne(const CoherentSignal& signal, double effective_intensity, double bob_phase,
                       Rng& rng);

// One intercept-resend round with single-photon detectors. Eve picks her
// basis uniformly, interferes the signal with a local pulse, and resends
// |+-alpha_e> / |+-i alpha_e> on a single click, vacuum otherwise.
CoherentSignal eve_spda_trial(const CoherentSignal& alice, const EveDetector& detector,
                              double mu_e, Rng& rng);

// One simultaneous-measurement round: 50/50 split, x1 and x2 measured, state
// resent according to which quadrature dominates.
CoherentSignal eve_sma_trial(const CoherentSignal& alice, double mu_e, Rng& rng);

struct SessionOptions {
  std::optional<HistogramSpec> histogram;
  unsigned workers = 1;  // 0 = hardware concurrency
};

struct SessionResult {
  SessionStats stats;
  std::optional<QuadratureHistogram> correct_basis;
  std::optional<QuadratureHistogram> wrong_basis;
};

SessionResult simulate_session(const ProtocolParams& params, const AttackConfig& attack,
                               std::uint64_t n_pulses, std::uint64_t seed,
                               const SessionOptions& options = {});

}  // namespace cvqkd::montecarlo
