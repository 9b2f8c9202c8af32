#include "dispatch.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <ostream>

#include "cvqkd/analysis.hpp"
#include "cvqkd/analytic.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/montecarlo.hpp"
#include "run_config.hpp"
#include "table_io.hpp"

namespace cvqkd::cli {

namespace {

using analysis::Column;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const RunConfig& cfg, const std::string& path, const OutputTable& table,
          std::ostream& out) {
  const auto write = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::kJson) {
      write_json(os, table);
    } else {
      write_csv(os, table);
    }
  };
  if (path.empty()) {
    write(out);
    return;
  }
  const auto resolved = resolve_output(path);
  std::ofstream file(resolved, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + resolved.string());
  write(file);
  if (!file) throw UsageError("failed writing output file " + resolved.string());
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::vector<double> x0_grid(const RunConfig& cfg) {
  return analysis::make_grid(cfg.x0_min, cfg.x0_max, cfg.x0_step);
}

// --- subcommands ------------------------------------------------------------

OutputTable run_analytic(const RunConfig& cfg) {
  analytic::BerResult r;
  if (cfg.attack.strategy == AttackStrategy::kNone) {
    r = analytic::ber_absence(cfg.params);
  } else {
    cfg.params.validate();
    cfg.attack.validate();
    const auto mix = analytic::resend_mixture(cfg.params.mu_a, cfg.attack);
    r = analytic::ber_presence(mix, cfg.attack.mu_e, cfg.params.x0);
  }
  return {cfg.echo("analytic"),
          {{"conclusive_prob", "prob"}, {"ber", "prob"}},
          {{r.conclusive_prob, r.ber}}};
}

OutputTable run_simulate(const RunConfig& cfg, std::ostream& out) {
  montecarlo::SessionOptions opts;
  opts.workers = cfg.workers;
  if (!cfg.histogram_output.empty()) opts.histogram = cfg.histogram;
  const auto result =
      montecarlo::simulate_session(cfg.params, cfg.attack, cfg.n_pulses, cfg.seed, opts);
  const auto& s = result.stats;

  if (result.correct_basis) {
    OutputTable hist{cfg.echo("simulate"),
                     {{"bin_lo", "quadrature"},
                      {"bin_hi", "quadrature"},
                      {"count_correct", "count"},
                      {"count_wrong", "count"}},
                     {}};
    const auto edges = result.correct_basis->edges();
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      hist.rows.push_back({edges[i], edges[i + 1],
                           static_cast<std::int64_t>(result.correct_basis->counts()[i]),
                           static_cast<std::int64_t>(result.wrong_basis->counts()[i])});
    }
    emit(cfg, cfg.histogram_output, hist, out);
  }

  const auto ber = s.ber_estimate();
  return {cfg.echo("simulate"),
          {{"n_sent", "count"},
           {"n_sifted", "count"},
           {"n_conclusive", "count"},
           {"n_errors", "count"},
           {"conclusive_rate", "prob"},
           {"ber", "prob"},
           {"ber_stderr", "prob"}},
          {{static_cast<std::int64_t>(s.n_sent), static_cast<std::int64_t>(s.n_sifted),
            static_cast<std::int64_t>(s.n_conclusive), static_cast<std::int64_t>(s.n_errors),
            optional_cell(s.conclusive_rate()), optional_cell(ber),
            ber ? Cell{s.ber_stderr()} : Cell{std::monostate{}}}}};
}

OutputTable run_sweep_threshold(const RunConfig& cfg) {
  std::vector<AttackConfig> attacks;
  for (double mu_e : cfg.mu_e_curves) {
    AttackConfig a = attack_or_spda(cfg);
    a.mu_e = mu_e;
    attacks.push_back(a);
  }
  const auto grid = x0_grid(cfg);
  return to_output(analysis::sweep_threshold(cfg.params, cfg.distances_km, attacks, grid),
                   cfg.echo("sweep-threshold"));
}

OutputTable run_density(const RunConfig& cfg) {
  const auto grid = analysis::make_grid(cfg.x_min, cfg.x_max, cfg.x_step);
  return to_output(analysis::density_curves(cfg.params, attack_or_spda(cfg), grid),
                   cfg.echo("density"));
}

OutputTable run_compare_attacks(const RunConfig& cfg) {
  const auto grid = x0_grid(cfg);
  return to_output(analysis::compare_attacks(cfg.params.mu_a, cfg.attack.mu_e, grid),
                   cfg.echo("compare-attacks"));
}

OutputTable run_crossover(const RunConfig& cfg) {
  const auto c = analysis::crossover_threshold(cfg.params, attack_or_spda(cfg), cfg.mu_e_grid,
                                               {cfg.x0_min, cfg.x0_max}, cfg.x0_step);
  std::string kind;
  Cell x0_star = std::monostate{};
  Cell min_ber = std::monostate{};
  switch (c.kind) {
    case analysis::CrossoverResult::Kind::kCrossing:
      kind = "crossing";
      x0_star = c.x0_star;
      min_ber = analysis::min_inherent_ber(cfg.params, c);
      break;
    case analysis::CrossoverResult::Kind::kAttackWinsEverywhere:
      kind = "attack_wins_everywhere";
      break;
    case analysis::CrossoverResult::Kind::kNoCrossingInRange:
      kind = "no_crossing_in_range";
      break;
  }
  return {cfg.echo("crossover"),
          {{"kind", "label"}, {"x0_star", "quadrature"}, {"min_inherent_ber", "prob"}},
          {{kind, x0_star, min_ber}}};
}

OutputTable run_max_distance(const RunConfig& cfg) {
  const double l = analysis::max_distance(cfg.params, attack_or_spda(cfg), cfg.mu_e_grid,
                                          {cfg.l_min, cfg.l_max}, cfg.x0_max);
  return {cfg.echo("max-distance"), {{"max_distance", "km"}}, {{l}}};
}

OutputTable run_table1(const RunConfig& cfg) {
  const auto spda = analytic::spda_mixture(cfg.params.mu_a, cfg.attack.detector);
  const auto sma = analytic::sma_mixture(cfg.params.mu_a);
  OutputTable t{cfg.echo("table1"),
                {{"attack", "label"},
                 {"p_plus", "prob"},
                 {"p_minus", "prob"},
                 {"p_plus_i", "prob"},
                 {"p_minus_i", "prob"},
                 {"p_vac", "prob"}},
                {}};
  for (const auto& [name, m] : {std::pair{"SPDA", spda}, std::pair{"SMA", sma}}) {
    t.rows.push_back({std::string(name), m.p_plus, m.p_minus, m.p_plus_i, m.p_minus_i, m.p_vac});
  }
  return t;
}

OutputTable run_detect(const RunConfig& cfg) {
  montecarlo::SessionOptions opts;
  opts.workers = cfg.workers;
  opts.histogram = cfg.histogram;
  const auto result =
      montecarlo::simulate_session(cfg.params, cfg.attack, cfg.n_pulses, cfg.seed, opts);

  OutputTable t{cfg.echo("detect"),
                {{"basis", "label"},
                 {"samples", "count"},
                 {"statistic", "chi2"},
                 {"dof", "count"},
                 {"p_value", "prob"},
                 {"decision", "label"}},
                {}};
  for (const auto* hist : {&*result.correct_basis, &*result.wrong_basis}) {
    const Basis basis = hist->basis();
    const auto report = analysis::gof_test(
        *hist,
        [&](double lo, double hi) {
          return analytic::outcome_mass_absence(cfg.params, basis, lo, hi);
        },
        cfg.significance);
    t.rows.push_back({std::string(to_string(basis)), static_cast<std::int64_t>(hist->total()),
                      report.statistic, static_cast<std::int64_t>(report.dof), report.p_value,
                      std::string(analysis::to_string(report.decision))});
  }
  return t;
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string attack = "none";
  std::string format = "csv";

  CLI::App app{"Phase-coding CV-QKD laboratory: homodyne post-selection, SPDA and SMA attacks",
               "cvqkd"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Flat 'key = value' file using the long flag names; flags override");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  app.add_option("--mu-a", cfg.params.mu_a, "Alice's mean photon number");
  app.add_option("--x0", cfg.params.x0, "Bob's post-selection threshold");
  app.add_option("--distance-km", cfg.params.distance_km, "Fiber length [km]");
  app.add_option("--loss-db-per-km", cfg.params.loss_db_per_km, "Fiber attenuation [dB/km]");
  app.add_option("--eta-bob", cfg.params.eta_bob, "Bob's optics times homodyne efficiency");
  app.add_option("--attack", attack, "Eavesdropper: none, spda or sma (analyses needing an attack use spda for none)")
      ->check(CLI::IsMember({"none", "spda", "sma"}));
  app.add_option("--mu-e", cfg.attack.mu_e, "Eve's resent intensity at Bob's homodyne input");
  app.add_option("--y0", cfg.attack.detector.y0, "Eve's SPD dark-count probability");
  app.add_option("--epsilon", cfg.attack.detector.epsilon, "Eve's SPD efficiency");
  app.add_option("-n,--n", cfg.n_pulses, "Pulses to simulate");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--workers", cfg.workers, "Simulation threads (0 = all cores); does not change results");
  app.add_option("--x0-min", cfg.x0_min, "Threshold grid start");
  app.add_option("--x0-max", cfg.x0_max, "Threshold grid end");
  app.add_option("--x0-step", cfg.x0_step, "Threshold grid step");
  app.add_option("--x-min", cfg.x_min, "Quadrature grid start (density)");
  app.add_option("--x-max", cfg.x_max, "Quadrature grid end (density)");
  app.add_option("--x-step", cfg.x_step, "Quadrature grid step (density)");
  app.add_option("--l-min", cfg.l_min, "Distance search start [km] (max-distance)");
  app.add_option("--l-max", cfg.l_max, "Distance search end [km] (max-distance)");
  app.add_option("--distances", cfg.distances_km, "Absence curves at these distances [km] (sweep-threshold)")
      ->delimiter(',');
  app.add_option("--mu-e-curves", cfg.mu_e_curves, "Presence curves at these mu_e (sweep-threshold)")
      ->delimiter(',');
  app.add_option("--mu-e-grid", cfg.mu_e_grid, "mu_e values Eve optimises over (crossover, max-distance)")
      ->delimiter(',');
  app.add_option("--hist-bins", cfg.histogram.bins, "Histogram bins");
  app.add_option("--hist-range", cfg.histogram.half_range, "Histogram covers [-range, range]");
  app.add_option("--significance", cfg.significance, "Goodness-of-fit significance level");
  app.add_option("-o,--output", cfg.output, "Output file (default stdout)");
  app.add_option("--histogram-output", cfg.histogram_output, "Histogram file (simulate)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  const std::map<std::string, std::string> commands{
      {"analytic", "Conclusive probability and BER for one configuration"},
      {"simulate", "Monte Carlo session statistics (+ optional histogram file)"},
      {"sweep-threshold", "BER versus threshold, with and without Eve"},
      {"density", "Outcome densities for both bases, with and without Eve"},
      {"compare-attacks", "BER versus threshold for SPDA and SMA"},
      {"crossover", "Largest threshold at which the attack is still visible"},
      {"max-distance", "Largest distance at which the attack is visible for some threshold"},
      {"table1", "Resend probabilities for SPDA and SMA"},
      {"detect", "Simulated session plus chi-square test against the no-Eve density"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    sub->set_help_flag();
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitUsage;
  }

  cfg.attack.strategy = *parse_attack_strategy(attack);
  cfg.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    OutputTable table;
    if (command == "analytic") table = run_analytic(cfg);
    else if (command == "simulate") table = run_simulate(cfg, out);
    else if (command == "sweep-threshold") table = run_sweep_threshold(cfg);
    else if (command == "density") table = run_density(cfg);
    else if (command == "compare-attacks") table = run_compare_attacks(cfg);
    else if (command == "crossover") table = run_crossover(cfg);
    else if (command == "max-distance") table = run_max_distance(cfg);
    else if (command == "table1") table = run_table1(cfg);
    else table = run_detect(cfg);
    emit(cfg, cfg.output, table, out);
  } catch (const UsageError& e) {
    report_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    report_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const InsufficientData& e) {
    report_error(err, "insufficient_data", e.what());
    return kExitInsufficientData;
  } catch (const std::exception& e) {
    report_error(err, "numerical", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace cvqkd::cli
