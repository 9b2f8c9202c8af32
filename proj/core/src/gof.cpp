#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "cvqkd/analysis.hpp"
#include "cvqkd/errors.hpp"
#include "quadrature.hpp"

namespace cvqkd::analysis {

std::string_view to_string(GofDecision d) {
  return d == GofDecision::kConsistent ? "consistent" : "eavesdropper_suspected";
}

GofReport gof_test(const montecarlo::QuadratureHistogram& hist, const BinMass& expected,
                   double significance) {
  if (!(significance > 0.0 && significance < 1.0)) {
    throw DomainError("significance must lie in (0, 1)");
  }
  if (hist.total() < kMinGofSamples) {
    throw InsufficientData("goodness-of-fit needs at least " + std::to_string(kMinGofSamples) +
                           " samples, histogram has " + std::to_string(hist.total()));
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kMinExpected = 5.0;
  const auto edges = hist.edges();
  const auto& counts = hist.counts();
  const double n = static_cast<double>(hist.total());

  struct Group {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Group> groups;
  Group open;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double lo = i == 0 ? -kInf : edges[i];
    const double hi = i + 1 == counts.size() ? kInf : edges[i + 1];
    open.expected += n * expected(lo, hi);
    open.observed += static_cast<double>(counts[i]);
    if (open.expected >= kMinExpected) {
      groups.push_back(open);
      open = {};
    }
  }
  if (open.expected > 0.0 || open.observed > 0.0) {
    if (groups.empty()) {
      groups.push_back(open);
    } else {
      groups.back().expected += open.expected;
      groups.back().observed += open.observed;
    }
  }
  if (groups.size() < 2) {
    throw InsufficientData("goodness-of-fit needs at least two bins after merging");
  }

  GofReport report;
  for (const auto& g : groups) {
    const double d = g.observed - g.expected;
    report.statistic += d * d / g.expected;
  }
  report.merged_bins = groups.size();
  report.dof = static_cast<int>(groups.size()) - 1;
  report.p_value = boost::math::gamma_q(0.5 * report.dof, 0.5 * report.statistic);
  report.decision = report.p_value < significance ? GofDecision::kEavesdropperSuspected
                                                  : GofDecision::kConsistent;
  return report;
}

GofReport gof_test(const montecarlo::QuadratureHistogram& hist, const Density& expected,
                   double significance) {
  // Infinite edges are cut off this far beyond the histogram range, in unit
  // panels so a narrow peak cannot slip between quadrature nodes.
  constexpr double kTailSpan = 12.0;
  const auto panels = [&](double a, double b) {
    double sum = 0.0;
    for (double s = a; s < b; s += 1.0) {
      sum += detail::integrate(expected, s, std::min(b, s + 1.0), 1e-12).value;
    }
    return sum;
  };
  const BinMass mass = [&](double lo, double hi) {
    if (std::isinf(lo)) lo = hist.lo() - kTailSpan;
    if (std::isinf(hi)) hi = hist.hi() + kTailSpan;
    return panels(lo, hi);
  };
  return gof_test(hist, mass, significance);
}

}  // namespace cvqkd::analysis
