#include "cvqkd/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "cvqkd/analytic.hpp"
#include "cvqkd/errors.hpp"

namespace cvqkd::analysis {

namespace {

std::string compact(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void require_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + " must not be empty");
}

ResendMixture attack_mixture(double mu_a, const AttackConfig& attack) {
  if (attack.strategy == AttackStrategy::kNone) {
    throw DomainError("this analysis needs an attack strategy (spda or sma)");
  }
  attack.validate();
  return analytic::resend_mixture(mu_a, attack);
}

CrossoverResult scan_crossover(const ResendMixture& mix, std::span<const double> mu_e_grid,
                               double received_intensity, Interval range, double step) {
  const std::vector<double> xs = make_grid(range.lo, range.hi, step);
  const auto margin = [&](double x0) {
    return detection_margin(mix, mu_e_grid, received_intensity, x0);
  };

  // Last grid point where the attack is still visible.
  std::optional<std::size_t> last_visible;
  for (std::size_t i = xs.size(); i-- > 0;) {
    if (margin(xs[i]) >= 0.0) {
      last_visible = i;
      break;
    }
  }
  if (!last_visible) return {CrossoverResult::Kind::kAttackWinsEverywhere, range.lo};
  if (*last_visible + 1 == xs.size()) return {CrossoverResult::Kind::kNoCrossingInRange, range.hi};

  double visible = xs[*last_visible];
  double hidden = xs[*last_visible + 1];
  while (hidden - visible > kThresholdTolerance) {
    const double mid = 0.5 * (visible + hidden);
    (margin(mid) >= 0.0 ? visible : hidden) = mid;
  }
  return {CrossoverResult::Kind::kCrossing, 0.5 * (visible + hidden)};
}

}  // namespace

void SweepTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].values.size() != curves.size()) {
      throw DomainError("sweep row " + std::to_string(i) + " has the wrong number of values");
    }
    if (i > 0 && !(rows[i].x > rows[i - 1].x)) {
      throw DomainError("sweep rows must be strictly increasing");
    }
  }
}

std::vector<double> SweepTable::column(std::size_t curve) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.values.at(curve));
  return out;
}

std::vector<double> default_mu_e_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i) grid.push_back(0.5 * i);
  return grid;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs step > 0 and hi >= lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

double detection_margin(const ResendMixture& mix, std::span<const double> mu_e_grid,
                        double received_intensity, double x0) {
  require_grid(mu_e_grid, "mu_e grid");
  double best = std::numeric_limits<double>::infinity();
  for (double mu_e : mu_e_grid) best = std::min(best, analytic::ber_presence(mix, mu_e, x0).ber);
  return best - analytic::ber_coherent(received_intensity, x0).ber;
}

CrossoverResult crossover_threshold(const ProtocolParams& params, const AttackConfig& attack,
                                    std::span<const double> mu_e_grid, Interval x0_range,
                                    double scan_step) {
  params.validate();
  require_grid(mu_e_grid, "mu_e grid");
  if (!(x0_range.lo >= 0.0) || !(x0_range.hi > x0_range.lo)) {
    throw DomainError("x0 range must satisfy 0 <= lo < hi");
  }
  const ResendMixture mix = attack_mixture(params.mu_a, attack);
  return scan_crossover(mix, mu_e_grid, params.received_intensity(), x0_range, scan_step);
}

double min_inherent_ber(const ProtocolParams& params, const CrossoverResult& crossover) {
  if (crossover.kind != CrossoverResult::Kind::kCrossing) {
    throw DomainError("minimal inherent BER needs a crossover threshold");
  }
  ProtocolParams at = params;
  at.x0 = crossover.x0_star;
  return analytic::ber_absence(at).ber;
}

double max_distance(const ProtocolParams& base, const AttackConfig& attack,
                    std::span<const double> mu_e_grid, Interval l_range, double x0_max) {
  require_grid(mu_e_grid, "mu_e grid");
  if (!(base.mu_a >= 0.0) || !(base.eta_bob > 0.0 && base.eta_bob <= 1.0) ||
      !(base.loss_db_per_km >= 0.0)) {
    throw DomainError("max_distance needs mu_a >= 0, eta_bob in (0,1], loss >= 0");
  }
  if (!(l_range.lo >= 0.0) || !(l_range.hi > l_range.lo) || !(x0_max > 0.0)) {
    throw DomainError("max_distance needs 0 <= l_lo < l_hi and x0_max > 0");
  }
  const ResendMixture mix = attack_mixture(base.mu_a, attack);
  const auto visible = [&](double l) {
    const double eta_c = std::pow(10.0, -base.loss_db_per_km * l / 10.0);
    const double received = eta_c * base.eta_bob * base.mu_a;
    return scan_crossover(mix, mu_e_grid, received, {0.0, x0_max}, kDefaultScanStep).kind !=
           CrossoverResult::Kind::kAttackWinsEverywhere;
  };

  double lo = l_range.lo;
  double hi = l_range.hi;
  if (!visible(lo)) return lo;
  if (visible(hi)) return hi;
  while (hi - lo > kDistanceTolerance) {
    const double mid = 0.5 * (lo + hi);
    (visible(mid) ? lo : hi) = mid;
  }
  return lo;
}

SweepTable sweep_threshold(const ProtocolParams& base, std::span<const double> distances_km,
                           std::span<const AttackConfig> attacks,
                           std::span<const double> x0_grid) {
  require_grid(x0_grid, "x0 grid");
  base.validate();

  std::vector<ProtocolParams> absent;
  SweepTable table{{"x0", "quadrature"}, {}, {}};
  for (double l : distances_km) {
    ProtocolParams p = base;
    p.distance_km = l;
    p.validate();
    absent.push_back(p);
    table.curves.push_back({"ber_absence_l" + compact(l) + "km", "prob"});
  }
  std::vector<ResendMixture> mixes;
  for (const auto& a : attacks) {
    mixes.push_back(attack_mixture(base.mu_a, a));
    table.curves.push_back(
        {"ber_" + std::string(to_string(a.strategy)) + "_mue" + compact(a.mu_e), "prob"});
  }

  for (double x0 : x0_grid) {
    SweepRow row{x0, {}};
    for (auto p : absent) {
      p.x0 = x0;
      row.values.push_back(analytic::ber_absence(p).ber);
    }
    for (std::size_t i = 0; i < attacks.size(); ++i) {
      row.values.push_back(analytic::ber_presence(mixes[i], attacks[i].mu_e, x0).ber);
    }
    table.rows.push_back(std::move(row));
  }
  table.validate();
  return table;
}

SweepTable density_curves(const ProtocolParams& params, const AttackConfig& attack,
                          std::span<const double> x_grid) {
  require_grid(x_grid, "x grid");
  params.validate();
  const ResendMixture mix = attack_mixture(params.mu_a, attack);

  SweepTable table{{"x", "quadrature"},
                   {{"density_absence_correct", "1/quadrature"},
                    {"density_absence_wrong", "1/quadrature"},
                    {"density_presence_correct", "1/quadrature"},
                    {"density_presence_wrong", "1/quadrature"}},
                   {}};
  for (double x : x_grid) {
    table.rows.push_back(
        {x,
         {analytic::outcome_density_absence(params, Basis::kCorrect, x),
          analytic::outcome_density_absence(params, Basis::kWrong, x),
          analytic::outcome_density_presence(mix, attack.mu_e, Basis::kCorrect, x),
          analytic::outcome_density_presence(mix, attack.mu_e, Basis::kWrong, x)}});
  }
  table.validate();
  return table;
}

SweepTable compare_attacks(double mu_a, double mu_e, std::span<const double> x0_grid) {
  require_grid(x0_grid, "x0 grid");
  const ResendMixture spda = analytic::spda_mixture(mu_a, EveDetector::perfect());
  const ResendMixture sma = analytic::sma_mixture(mu_a);

  SweepTable table{{"x0", "quadrature"}, {{"ber_spda", "prob"}, {"ber_sma", "prob"}}, {}};
  for (double x0 : x0_grid) {
    table.rows.push_back({x0,
                          {analytic::ber_presence(spda, mu_e, x0).ber,
                           analytic::ber_presence(sma, mu_e, x0).ber}});
  }
  table.validate();
  return table;
}

std::optional<double> compare_attacks_crossing(double mu_a, double mu_e, Interval x0_range,
                                               double scan_step) {
  const ResendMixture spda = analytic::spda_mixture(mu_a, EveDetector::perfect());
  const ResendMixture sma = analytic::sma_mixture(mu_a);
  const auto diff = [&](double x0) {
    return analytic::ber_presence(spda, mu_e, x0).ber - analytic::ber_presence(sma, mu_e, x0).ber;
  };

  const std::vector<double> xs = make_grid(x0_range.lo, x0_range.hi, scan_step);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double a = xs[i];
    double b = xs[i + 1];
    const double fa = diff(a);
    if (fa == 0.0) return a;
    if ((fa > 0.0) == (diff(b) > 0.0)) continue;
    while (b - a > 1e-12) {
      const double mid = 0.5 * (a + b);
      ((diff(mid) > 0.0) == (fa > 0.0) ? a : b) = mid;
    }
    return 0.5 * (a + b);
  }
  return std::nullopt;
}

}  // namespace cvqkd::analysis
