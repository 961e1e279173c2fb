#pragma once

// Seeded cross-check suites over random parameter draws. Each suite declares
// the regime it applies to; draws outside that regime are counted as
// exclusions rather than failures.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "briberynet/aggregate.hpp"
#include "briberynet/bargaining.hpp"
#include "briberynet/cli/config.hpp"
#include "briberynet/comparative_statics.hpp"
#include "briberynet/network.hpp"
#include "briberynet/parallel.hpp"

namespace briberynet::cli {

inline constexpr double kOracleAgreementTol = 1e-6;
inline constexpr double kGradientTol = 1e-5;
inline constexpr double kIdentityTol = 1e-12;

struct SuiteResult {
  std::string name;
  double tolerance = 0.0;
  std::size_t checked = 0;
  std::size_t excluded = 0;
  std::size_t failures = 0;
  double worst_deviation = 0.0;

  bool passed() const { return failures == 0; }
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<SuiteResult> suites;

  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double draw_in(std::mt19937_64& rng, const Range& r) { return r.lo + (r.hi - r.lo) * unit_uniform(rng); }

inline ModelParams draw_params(std::mt19937_64& rng, const SamplingRanges& ranges) {
  ModelParams m;
  m.payoff = draw_in(rng, ranges.payoff);
  m.reservation_payoff = 0.0;
  m.officer_fine = draw_in(rng, ranges.officer_fine);
  m.citizen_fine = m.officer_fine * draw_in(rng, ranges.citizen_fine_fraction);
  m.share = draw_in(rng, ranges.share);
  m.detection = std::min(1.0, m.share * draw_in(rng, ranges.detection_fraction));
  m.harassment_detection = m.detection * draw_in(rng, ranges.harassment_fraction);
  const double n = draw_in(rng, {ranges.network_size.lo, ranges.network_size.hi + 1.0});
  m.network_size = std::max(1, static_cast<int>(std::min(std::floor(n), ranges.network_size.hi)));
  return m;
}

inline ModelParams scale_currency(ModelParams m, double lambda) {
  m.payoff *= lambda;
  m.reservation_payoff *= lambda;
  m.officer_fine *= lambda;
  m.citizen_fine *= lambda;
  return m;
}

namespace detail {

enum class Verdict { Excluded, Pass, Fail };

struct Check {
  Verdict verdict = Verdict::Excluded;
  double deviation = 0.0;
};

inline Check judge(double deviation, double tolerance) {
  return {deviation <= tolerance ? Verdict::Pass : Verdict::Fail, deviation};
}

/// Relative error measured against the magnitude of the terms being combined,
/// so that results near zero from cancellation are not penalized.
inline double scaled_deviation(double a, double b, double magnitude) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), magnitude, kSignTolerance});
}

inline bool in_bargaining_regime(const ModelParams& m) {
  return m.detection - m.harassment_detection > kSignTolerance && bribe_cost_slope(m) > kSignTolerance &&
         m.share - m.detection > kSignTolerance;
}

enum Suite : std::size_t {
  kOracle,
  kArgmax,
  kUtilityIdentity,
  kGradient,
  kSignRegime,
  kTermination,
  kCollusion,
  kHomogeneity,
  kCountLinearity,
  kSuiteCount
};

inline const std::array<std::pair<const char*, double>, kSuiteCount>& suite_table() {
  static const std::array<std::pair<const char*, double>, kSuiteCount> table{{
      {"oracle-agreement", kOracleAgreementTol},
      {"argmax-characterization", 0.0},
      {"network-utility-identity", kIdentityTol},
      {"gradient", kGradientTol},
      {"sign-regime", 0.0},
      {"termination-closed-form", 0.0},
      {"collusion-equilibrium", 0.0},
      {"currency-homogeneity", kIdentityTol},
      {"bribe-count-linearity", kIdentityTol},
  }};
  return table;
}

inline std::array<Check, kSuiteCount> check_draw(const ModelParams& m) {
  std::array<Check, kSuiteCount> out{};
  if (!in_bargaining_regime(m)) return out;

  const Equilibrium closed = equilibrium_bribe_closed_form(m);
  const double surplus = bargaining_surplus(m);
  const double slope = bribe_cost_slope(m);

  try {
    const Equilibrium numeric = equilibrium_bribe_numerical(m, default_search_max(m));
    out[kOracle] = judge(std::abs(closed.bribe - numeric.bribe) / std::max(1.0, std::abs(closed.bribe)),
                         kOracleAgreementTol);
  } catch (const Error&) {
    out[kOracle] = {Verdict::Fail, INFINITY};
  }

  if (closed.bribe > 0.0) {
    const double peak = briberynet::detail::nash_product(m, closed.bribe);
    double worst = -INFINITY;
    for (double delta : {1e-3, 1e-2, 1e-1}) {
      worst = std::max(worst, briberynet::detail::nash_product(m, closed.bribe + delta) - peak);
      if (closed.bribe - delta >= 0.0)
        worst = std::max(worst, briberynet::detail::nash_product(m, closed.bribe - delta) - peak);
    }
    out[kArgmax] = {worst < 0.0 ? Verdict::Pass : Verdict::Fail, std::max(0.0, worst)};
  }

  {
    const double lead = (m.share - m.detection) * surplus / (2.0 * slope);
    const double fine = m.detection * m.officer_fine;
    out[kUtilityIdentity] = judge(
        scaled_deviation(closed.network_utility, lead - fine, std::abs(lead) + fine), kIdentityTol);
  }

  const PartialReport partials = partial_report(m);
  out[kGradient] = judge(partials.max_rel_deviation, kGradientTol);

  if (m.officer_fine - m.citizen_fine > kSignTolerance) {
    const bool ok = partials.d_bribe_d_p >= 0.0 && partials.d_bribe_d_ph >= 0.0 &&
                    partials.d_bribe_d_n >= 0.0 && partials.d_bribe_d_x <= 0.0;
    out[kSignRegime] = {ok ? Verdict::Pass : Verdict::Fail, 0.0};
  }

  if (closed.bribe > 0.0) {
    const OfficerChain chain = build_chain(m, closed.bribe, kDefaultMaxRank);
    if (chain.closed_form_index && !chain.truncated) {
      const long diff = std::labs(*chain.closed_form_index - chain.termination_index);
      out[kTermination] = {diff == 0 ? Verdict::Pass : Verdict::Fail, static_cast<double>(diff)};
      if (chain.termination_index >= 1) {
        const CollusionCheck c = collusion_check(m, closed.bribe, kDefaultMaxRank);
        out[kCollusion] = {c.is_nash ? Verdict::Pass : Verdict::Fail, 0.0};
      }
    }
  }

  {
    constexpr double lambda = 3.0;
    const Equilibrium scaled = equilibrium_bribe_closed_form(scale_currency(m, lambda));
    const double utility_scale = closed.bribe / m.network_size +
                                 m.detection * (m.officer_fine + closed.bribe / (m.network_size * m.share));
    const double citizen_scale = m.payoff + std::abs(closed.bribe) + m.detection * m.citizen_fine +
                                 m.harassment_detection * (std::abs(closed.bribe) + m.network_size * m.officer_fine);
    const double dev = std::max({scaled_deviation(scaled.bribe, lambda * closed.bribe, 0.0),
                                 scaled_deviation(scaled.citizen_utility, lambda * closed.citizen_utility,
                                                  lambda * citizen_scale),
                                 scaled_deviation(scaled.network_utility, lambda * closed.network_utility,
                                                  lambda * utility_scale)});
    out[kHomogeneity] = judge(dev, kIdentityTol);
  }

  if (closed.bribe > kSignTolerance) {
    try {
      const double d = 100.0;
      const double single = bribe_count_m1(m, d);
      const double doubled = bribe_count_m1(m, 2.0 * d);
      out[kCountLinearity] = judge(scaled_deviation(doubled, 2.0 * single, 0.0), kIdentityTol);
    } catch (const Error&) {
      // singular bribe-count denominator: outside the regime
    }
  }
  return out;
}

}  // namespace detail

inline VerificationReport run_verification(const SamplingRanges& ranges, std::size_t samples,
                                           std::uint64_t seed, unsigned threads = 1) {
  std::mt19937_64 rng(seed);
  std::vector<ModelParams> draws;
  draws.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) draws.push_back(draw_params(rng, ranges));

  std::vector<std::array<detail::Check, detail::kSuiteCount>> checks(samples);
  parallel_for(samples, [&](std::size_t i) { checks[i] = detail::check_draw(draws[i]); }, threads);

  VerificationReport report;
  report.seed = seed;
  report.samples = samples;
  const auto& table = detail::suite_table();
  for (std::size_t s = 0; s < detail::kSuiteCount; ++s) {
    SuiteResult r;
    r.name = table[s].first;
    r.tolerance = table[s].second;
    for (const auto& draw : checks) {
      const detail::Check& c = draw[s];
      switch (c.verdict) {
        case detail::Verdict::Excluded: ++r.excluded; break;
        case detail::Verdict::Pass: ++r.checked; break;
        case detail::Verdict::Fail:
          ++r.checked;
          ++r.failures;
          break;
      }
      if (c.verdict != detail::Verdict::Excluded) r.worst_deviation = std::max(r.worst_deviation, c.deviation);
    }
    report.suites.push_back(r);
  }
  return report;
}

}  // namespace briberynet::cli
