#include "cvqkd/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "cvqkd/errors.hpp"

namespace cvqkd::montecarlo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// cos(d pi / 2) for d taken mod 4.
constexpr std::array<double, 4> kQuarterCos{1.0, 0.0, -1.0, 0.0};
constexpr std::array<double, 4> kQuarterSin{0.0, 1.0, 0.0, -1.0};

int mod4(int v) { return ((v % 4) + 4) % 4; }

double draw_quadrature(double mean, Rng& rng) {
  std::normal_distribution<double> normal(mean, kQuadratureStddev);
  return normal(rng);
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  splitmix64(state);
  state ^= (stream + 1) * 0xD1B54A32D192ED03ull;
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t w = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(w);
    words[i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

std::optional<double> SessionStats::ber_estimate() const {
  if (n_conclusive == 0) return std::nullopt;
  return static_cast<double>(n_errors) / static_cast<double>(n_conclusive);
}

double SessionStats::ber_stderr() const {
  const auto p = ber_estimate();
  if (!p) return 0.0;
  return std::sqrt(*p * (1.0 - *p) / static_cast<double>(n_conclusive));
}

std::optional<double> SessionStats::conclusive_rate() const {
  if (n_sifted == 0) return std::nullopt;
  return static_cast<double>(n_conclusive) / static_cast<double>(n_sifted);
}

SessionStats& SessionStats::operator+=(const SessionStats& other) {
  n_sent += other.n_sent;
  n_sifted += other.n_sifted;
  n_conclusive += other.n_conclusive;
  n_errors += other.n_errors;
  return *this;
}

void HistogramSpec::validate() const {
  if (!(half_range > 0.0) || !std::isfinite(half_range)) {
    throw DomainError("histogram half range must be > 0");
  }
  if (bins == 0) throw DomainError("histogram needs at least one bin");
}

QuadratureHistogram::QuadratureHistogram(Basis basis, const HistogramSpec& spec)
    : basis_(basis), lo_(-spec.half_range), hi_(spec.half_range), counts_(spec.bins, 0) {
  spec.validate();
}

QuadratureHistogram::QuadratureHistogram(Basis basis, double lo, double hi,
                                         std::vector<std::uint64_t> counts)
    : basis_(basis), lo_(lo), hi_(hi), counts_(std::move(counts)) {
  if (!(hi_ > lo_) || counts_.empty()) throw DomainError("histogram range or bin count invalid");
  for (auto c : counts_) total_ += c;
}

void QuadratureHistogram::add(double x) {
  const double pos = (x - lo_) / bin_width();
  std::size_t idx = 0;
  if (pos >= static_cast<double>(counts_.size())) {
    idx = counts_.size() - 1;
  } else if (pos > 0.0) {
    idx = static_cast<std::size_t>(pos);
  }
  ++counts_[idx];
  ++total_;
}

QuadratureHistogram& QuadratureHistogram::operator+=(const QuadratureHistogram& other) {
  if (other.basis_ != basis_ || other.lo_ != lo_ || other.hi_ != hi_ ||
      other.counts_.size() != counts_.size()) {
    throw DomainError("cannot merge histograms with different binning");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  return *this;
}

std::vector<double> QuadratureHistogram::edges() const {
  std::vector<double> e(counts_.size() + 1);
  const double w = bin_width();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = lo_ + w * static_cast<double>(i);
  e.back() = hi_;
  return e;
}

double sample_homodyne(const CoherentSignal& signal, double effective_intensity, double bob_phase,
                       Rng& rng) {
  const double mean = signal.is_vacuum()
                          ? 0.0
                          : std::sqrt(effective_intensity) * std::cos(bob_phase - signal.phase());
  return draw_quadrature(mean, rng);
}

CoherentSignal eve_spda_trial(const CoherentSignal& alice, const EveDetector& detector,
                              double mu_e, Rng& rng) {
  const int eve_basis = static_cast<int>(rng() & 1u);
  // Perfect interference: D1 sees eps mu (1 + cos d), D2 sees eps mu (1 - cos d).
  const double c = kQuarterCos[mod4(alice.phase_index - eve_basis)];
  const double mean_d1 = detector.epsilon * alice.intensity * (1.0 + c);
  const double mean_d2 = detector.epsilon * alice.intensity * (1.0 - c);
  const double click_d1 = 1.0 - (1.0 - detector.y0) * std::exp(-mean_d1);
  const double click_d2 = 1.0 - (1.0 - detector.y0) * std::exp(-mean_d2);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const bool d1 = uniform(rng) < click_d1;
  const bool d2 = uniform(rng) < click_d2;
  if (d1 == d2) return CoherentSignal::vacuum();
  return {mu_e, d1 ? eve_basis : eve_basis + 2};
}

CoherentSignal eve_sma_trial(const CoherentSignal& alice, double mu_e, Rng& rng) {
  const double amp = std::sqrt(alice.intensity / 2.0);
  const int k = mod4(alice.phase_index);
  const double x1 = draw_quadrature(amp * kQuarterCos[k], rng);
  const double x2 = draw_quadrature(amp * kQuarterSin[k], rng);
  if (x1 >= std::abs(x2)) return {mu_e, 0};
  if (-x1 >= std::abs(x2)) return {mu_e, 2};
  if (x2 > std::abs(x1)) return {mu_e, 1};
  return {mu_e, 3};
}

namespace {

struct Accumulator {
  SessionStats stats;
  std::optional<QuadratureHistogram> correct;
  std::optional<QuadratureHistogram> wrong;

  explicit Accumulator(const std::optional<HistogramSpec>& spec) {
    if (spec) {
      correct.emplace(Basis::kCorrect, *spec);
      wrong.emplace(Basis::kWrong, *spec);
    }
  }

  void merge(const Accumulator& other) {
    stats += other.stats;
    if (correct) {
      *correct += *other.correct;
      *wrong += *other.wrong;
    }
  }
};

void run_chunk(const ProtocolParams& params, const AttackConfig& attack, double received,
               std::uint64_t begin, std::uint64_t end, Rng rng, Accumulator& acc) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t bits = rng();
    const int k = static_cast<int>(bits & 3u);
    const int bob_basis = static_cast<int>((bits >> 2) & 1u);
    const CoherentSignal alice{params.mu_a, k};

    double x = 0.0;
    switch (attack.strategy) {
      case AttackStrategy::kNone:
        x = sample_homodyne(alice, received, bob_basis * kHalfPi, rng);
        break;
      case AttackStrategy::kSpda: {
        const CoherentSignal resent = eve_spda_trial(alice, attack.detector, attack.mu_e, rng);
        x = sample_homodyne(resent, resent.intensity, bob_basis * kHalfPi, rng);
        break;
      }
      case AttackStrategy::kSma: {
        const CoherentSignal resent = eve_sma_trial(alice, attack.mu_e, rng);
        x = sample_homodyne(resent, resent.intensity, bob_basis * kHalfPi, rng);
        break;
      }
    }

    ++acc.stats.n_sent;
    // Relative phase in units of pi/2: even means matching basis, and values
    // 2, 3 mean Alice's state lies along the negative axis of Bob's quadrature.
    const int rel = mod4(bob_basis - k);
    const double folded = rel < 2 ? x : -x;
    if (rel % 2 == 0) {
      ++acc.stats.n_sifted;
      if (acc.correct) acc.correct->add(folded);
      if (std::abs(x) > params.x0) {
        ++acc.stats.n_conclusive;
        const int alice_bit = k >= 2 ? 1 : 0;
        const int bob_bit = x > params.x0 ? 0 : 1;
        if (alice_bit != bob_bit) ++acc.stats.n_errors;
      }
    } else if (acc.wrong) {
      acc.wrong->add(folded);
    }
  }
}

}  // namespace

SessionResult simulate_session(const ProtocolParams& params, const AttackConfig& attack,
                               std::uint64_t n_pulses, std::uint64_t seed,
                               const SessionOptions& options) {
  params.validate();
  attack.validate();
  if (options.histogram) options.histogram->validate();

  const double received = params.received_intensity();
  const std::uint64_t n_chunks = (n_pulses + kChunkPulses - 1) / kChunkPulses;
  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, n_chunks)));

  std::vector<Accumulator> partial(workers, Accumulator(options.histogram));
  const auto work = [&](unsigned w) {
    for (std::uint64_t c = w; c < n_chunks; c += workers) {
      const std::uint64_t begin = c * kChunkPulses;
      const std::uint64_t end = std::min(n_pulses, begin + kChunkPulses);
      run_chunk(params, attack, received, begin, end, make_stream(seed, c), partial[w]);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Accumulator total(options.histogram);
  for (const auto& p : partial) total.merge(p);
  return {total.stats, std::move(total.correct), std::move(total.wrong)};
}

}  // namespace cvqkd::montecarlo
