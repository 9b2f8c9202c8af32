#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvqkd/model.hpp"
#include "cvqkd/montecarlo.hpp"
#include "table_io.hpp"

namespace cvqkd::cli {

enum class OutputFormat { kCsv, kJson };

// Everything a subcommand may read. Defaults are the documented defaults of
// the command line.
struct RunConfig {
  ProtocolParams params{};
  AttackConfig attack{AttackStrategy::kNone, 3.0, EveDetector::perfect()};

  std::uint64_t n_pulses = 1'000'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;

  double x0_min = 0.0;
  double x0_max = 3.0;
  double x0_step = 0.01;
  double x_min = -3.0;
  double x_max = 5.0;
  double x_step = 0.01;
  double l_min = 0.0;
  double l_max = 100.0;
  std::vector<double> distances_km{0.0, 10.0, 30.0, 50.0};
  std::vector<double> mu_e_curves{1.0, 3.0, 6.0};
  std::vector<double> mu_e_grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};

  montecarlo::HistogramSpec histogram{};
  double significance = 1e-3;

  std::string output;            // empty: stdout
  std::string histogram_output;  // simulate only
  OutputFormat format = OutputFormat::kCsv;

  // Resolved configuration echoed into every output file.
  std::vector<HeaderEntry> echo(const std::string& command) const;
};

// Attack used by subcommands that need one: kNone falls back to SPDA.
AttackConfig attack_or_spda(const RunConfig& cfg);

}  // namespace cvqkd::cli
