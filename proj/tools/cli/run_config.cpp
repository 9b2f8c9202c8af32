#include "run_config.hpp"

namespace cvqkd::cli {

std::vector<HeaderEntry> RunConfig::echo(const std::string& command) const {
  std::vector<HeaderEntry> h{
      {"command", command},
      {"mu-a", params.mu_a},
      {"x0", params.x0},
      {"distance-km", params.distance_km},
      {"loss-db-per-km", params.loss_db_per_km},
      {"eta-bob", params.eta_bob},
      {"attack", std::string(to_string(attack.strategy))},
      {"mu-e", attack.mu_e},
      {"y0", attack.detector.y0},
      {"epsilon", attack.detector.epsilon},
      {"n", static_cast<std::int64_t>(n_pulses)},
      {"seed", static_cast<std::int64_t>(seed)},
      {"x0-min", x0_min},
      {"x0-max", x0_max},
      {"x0-step", x0_step},
      {"x-min", x_min},
      {"x-max", x_max},
      {"x-step", x_step},
      {"l-min", l_min},
      {"l-max", l_max},
      {"distances", join(distances_km)},
      {"mu-e-curves", join(mu_e_curves)},
      {"mu-e-grid", join(mu_e_grid)},
      {"hist-bins", static_cast<std::int64_t>(histogram.bins)},
      {"hist-range", histogram.half_range},
      {"significance", significance},
  };
  return h;
}

AttackConfig attack_or_spda(const RunConfig& cfg) {
  AttackConfig a = cfg.attack;
  if (a.strategy == AttackStrategy::kNone) a.strategy = AttackStrategy::kSpda;
  return a;
}

}  // namespace cvqkd::cli
