#pragma once

// Experiments built on the analytic layer: threshold sweeps, crossover
// threshold, maximal distance, attack comparison, and the histogram
// goodness-of-fit countermeasure.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvqkd/model.hpp"
#include "cvqkd/montecarlo.hpp"

namespace cvqkd::analysis {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Column {
  std::string name;
  std::string unit;

  bool operator==(const Column&) const = default;
};

struct SweepRow {
  double x = 0.0;
  std::vector<double> values;  // one per curve

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  Column variable;
  std::vector<Column> curves;
  std::vector<SweepRow> rows;

  // Rows strictly increasing in x, one value per curve in each row.
  void validate() const;
  std::vector<double> column(std::size_t curve) const;

  bool operator==(const SweepTable&) const = default;
};

// Eve's resent intensities searched when she optimises: {0.5, 1.0, ..., 6.0}.
std::vector<double> default_mu_e_grid();

// Evenly spaced grid lo, lo+step, ..., hi (hi included when it lies on the
// grid up to rounding).
std::vector<double> make_grid(double lo, double hi, double step);

// min over mu_e of ber_presence(x0) minus ber_absence(x0). Negative means the
// attack hides below the inherent error rate ("attack wins"); zero counts as
// detectable.
double detection_margin(const ResendMixture& mix, std::span<const double> mu_e_grid,
                        double received_intensity, double x0);

struct CrossoverResult {
  enum class Kind {
    kCrossing,              // attack wins for every x0 >= x0_star
    kAttackWinsEverywhere,  // already wins at the bottom of the range
    kNoCrossingInRange,     // never wins at the top of the range
  };
  Kind kind = Kind::kNoCrossingInRange;
  double x0_star = 0.0;  // meaningful for kCrossing
};

inline constexpr double kDefaultScanStep = 0.01;
inline constexpr double kThresholdTolerance = 1e-4;
inline constexpr double kDistanceTolerance = 0.1;

// Largest threshold Bob can use while an attack (strategy and detector from
// `attack`, mu_e optimised over the grid) still raises the BER. Grid scan at
// `scan_step`, then bisection to 1e-4. Throws DomainError for an empty grid.
CrossoverResult crossover_threshold(const ProtocolParams& params, const AttackConfig& attack,
                                    std::span<const double> mu_e_grid,
                                    Interval x0_range = {0.0, 3.0},
                                    double scan_step = kDefaultScanStep);

// ber_absence at x0*. Throws DomainError unless the crossover is kCrossing.
double min_inherent_ber(const ProtocolParams& params, const CrossoverResult& crossover);

// Largest distance (bisection to 0.1 km) at which some x0 in [0, x0_max]
// keeps the attack visible. `base` supplies mu_a, loss and eta_bob; loss may
// be 0 here, in which case distance has no effect.
double max_distance(const ProtocolParams& base, const AttackConfig& attack,
                    std::span<const double> mu_e_grid, Interval l_range = {0.0, 100.0},
                    double x0_max = 3.0);

// BER versus threshold: one absence curve per distance and one presence curve
// per attack (mixture from base.mu_a).
SweepTable sweep_threshold(const ProtocolParams& base, std::span<const double> distances_km,
                           std::span<const AttackConfig> attacks,
                           std::span<const double> x0_grid);

// Outcome densities: absence/presence times correct/wrong basis.
SweepTable density_curves(const ProtocolParams& params, const AttackConfig& attack,
                          std::span<const double> x_grid);

// BER with SPDA (perfect detectors) and with SMA at the same mu_a, mu_e.
SweepTable compare_attacks(double mu_a, double mu_e, std::span<const double> x0_grid);

// Threshold where the two compare_attacks curves cross, if they do in range.
std::optional<double> compare_attacks_crossing(double mu_a, double mu_e, Interval x0_range,
                                               double scan_step = kDefaultScanStep);

// --- goodness of fit -------------------------------------------------------

enum class GofDecision { kConsistent, kEavesdropperSuspected };

std::string_view to_string(GofDecision d);

struct GofReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  GofDecision decision = GofDecision::kConsistent;
  std::size_t merged_bins = 0;
};

inline constexpr double kDefaultSignificance = 1e-3;
inline constexpr std::uint64_t kMinGofSamples = 1000;

// Expected probability mass on [lo, hi]; lo / hi may be infinite.
using BinMass = std::function<double(double lo, double hi)>;
using Density = std::function<double(double x)>;

// Pearson chi-square of the histogram against expected bin masses. Adjacent
// bins are merged left to right until every expected count is >= 5; the
// open-ended edge bins take the tails. dof = merged bins - 1.
// Throws InsufficientData when total < 1000 or fewer than two merged bins.
GofReport gof_test(const montecarlo::QuadratureHistogram& hist, const BinMass& expected,
                   double significance = kDefaultSignificance);

// Same, integrating a density numerically over each bin.
GofReport gof_test(const montecarlo::QuadratureHistogram& hist, const Density& expected,
                   double significance = kDefaultSignificance);

}  // namespace cvqkd::analysis
