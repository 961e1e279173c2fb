#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "briberynet/model.hpp"

namespace briberynet::testing {

/// Fixture used throughout the model's worked examples.
inline ModelParams reference_params() {
  ModelParams m;
  m.payoff = 10.0;
  m.reservation_payoff = 0.0;
  m.officer_fine = 5.0;
  m.citizen_fine = 2.0;
  m.detection = 0.1;
  m.harassment_detection = 0.05;
  m.share = 0.5;
  m.network_size = 4;
  return m;
}

/// B* at the reference fixture, 2 * 11.3 / 4.6.
inline constexpr double kReferenceBribe = 113.0 / 23.0;

class ParamGenerator {
 public:
  explicit ParamGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Active regime: F_O >= F_C, 0 < p_h < p < x.
  ModelParams active() {
    ModelParams m;
    m.payoff = uniform(0.5, 100.0);
    m.officer_fine = uniform(0.1, 50.0);
    m.citizen_fine = m.officer_fine * uniform(0.0, 0.95);
    m.share = uniform(0.05, 0.95);
    m.detection = m.share * uniform(0.05, 0.95);
    m.harassment_detection = m.detection * uniform(0.01, 0.95);
    m.network_size = integer(1, 50);
    m.reservation_payoff = 0.0;
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace briberynet::testing
