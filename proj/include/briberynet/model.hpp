#pragma once

// Primitive utilities of the harassment-bribery network model.
//
// A citizen pays a bribe to the first officer of a ranked chain. Every officer
// keeps a constant fraction `share` of what reaches him and forwards the rest,
// so rank j keeps share*(1-share)^(j-1) of the bribe. Detection happens with
// probability `detection`; detection as a harassment bribe (probability
// `harassment_detection`, a subset of all detections) refunds the citizen the
// bribe plus the fines collected from the whole network.

#include <cmath>
#include <sstream>
#include <string>

#include "briberynet/errors.hpp"

namespace briberynet {

/// Absolute tolerance used by every sign test in the model.
inline constexpr double kSignTolerance = 1e-12;

struct ModelParams {
  double payoff = 10.0;              // value of the service to the citizen
  double reservation_payoff = 0.0;   // below this payoff nobody bribes
  double officer_fine = 5.0;
  double citizen_fine = 2.0;
  double detection = 0.1;            // overall detection probability
  double harassment_detection = 0.05;
  double share = 0.5;                // fraction kept at each hop, in (0,1)
  int network_size = 4;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

namespace detail {

inline bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

inline std::string describe(const ModelParams& m) {
  std::ostringstream os;
  os << "P=" << m.payoff << " P_min=" << m.reservation_payoff << " F_O=" << m.officer_fine
     << " F_C=" << m.citizen_fine << " p=" << m.detection << " p_h=" << m.harassment_detection
     << " x=" << m.share << " n=" << m.network_size;
  return os.str();
}

// Unchecked formulas shared by the validated entry points below. They accept
// any real bribe (including negative equilibrium values) and a real-valued
// network size so callers can differentiate in n.
inline double citizen_utility(double payoff, double officer_fine, double citizen_fine,
                              double p, double p_h, double n, double bribe) {
  return payoff - bribe - p * citizen_fine + p_h * (bribe + n * officer_fine);
}

inline double network_utility(double officer_fine, double p, double x, double n, double bribe) {
  return bribe / n - p * (officer_fine + bribe / (n * x));
}

inline double citizen_utility(const ModelParams& m, double bribe) {
  return citizen_utility(m.payoff, m.officer_fine, m.citizen_fine, m.detection,
                         m.harassment_detection, m.network_size, bribe);
}

inline double network_utility(const ModelParams& m, double bribe) {
  return network_utility(m.officer_fine, m.detection, m.share, m.network_size, bribe);
}

}  // namespace detail

/// Throws Error{Domain} naming the first violated invariant.
inline void validate(const ModelParams& m) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Domain, why + " (" + detail::describe(m) + ")");
  };
  if (!detail::finite_nonnegative(m.payoff)) fail("payoff P must be finite and >= 0");
  if (!detail::finite_nonnegative(m.reservation_payoff))
    fail("reservation payoff P_min must be finite and >= 0");
  if (!detail::finite_nonnegative(m.officer_fine)) fail("officer fine F_O must be finite and >= 0");
  if (!detail::finite_nonnegative(m.citizen_fine)) fail("citizen fine F_C must be finite and >= 0");
  if (!(m.detection >= 0.0 && m.detection <= 1.0)) fail("detection p must lie in [0,1]");
  if (!(m.harassment_detection >= 0.0 && m.harassment_detection <= m.detection))
    fail("harassment detection p_h must lie in [0,p]");
  if (!(m.share > 0.0 && m.share < 1.0)) fail("share x must lie strictly inside (0,1)");
  if (m.network_size < 1) fail("network size n must be >= 1");
}

inline void require_nonnegative_bribe(double bribe) {
  if (!detail::finite_nonnegative(bribe))
    throw Error(ErrorKind::Domain, "bribe must be finite and >= 0");
}

enum class PunishmentRegime { Symmetric, Asymmetric };

/// Symmetric when both fines are equal, asymmetric when the officer's fine is
/// larger. A citizen fine above the officer fine is rejected.
inline PunishmentRegime punishment_regime(const ModelParams& m) {
  validate(m);
  if (m.officer_fine == m.citizen_fine) return PunishmentRegime::Symmetric;
  if (m.officer_fine > m.citizen_fine) return PunishmentRegime::Asymmetric;
  throw Error(ErrorKind::Domain, "officer fine F_O below citizen fine F_C is not a valid regime");
}

struct Award {
  double amount = 0.0;
  bool exceeds_citizen_fine = false;
};

/// Refund paid to a citizen whose harassment bribe is detected: the bribe back
/// plus one fine per officer in the network.
inline Award award_function(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  const double amount = bribe + m.network_size * m.officer_fine;
  return {amount, amount > m.citizen_fine};
}

inline double citizen_utility(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  return detail::citizen_utility(m, bribe);
}

/// Expected utility of the officer at `rank` (1 = the one facing the citizen).
inline double officer_utility_at_rank(const ModelParams& m, double bribe, int rank) {
  validate(m);
  require_nonnegative_bribe(bribe);
  if (rank < 1) throw Error(ErrorKind::Domain, "officer rank must be >= 1");
  const double flow = std::pow(1.0 - m.share, rank - 1) * bribe;
  return flow * (m.share - m.detection) - m.detection * m.officer_fine;
}

/// Per-officer network utility using the infinite geometric sum, the form all
/// closed-form equilibrium results are built on.
inline double network_utility(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  if (std::abs(m.network_size * m.share) <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "network utility divides by n*x = 0");
  return detail::network_utility(m, bribe);
}

/// Exact finite average of the n rank utilities. Differs from
/// network_utility by (x-p)(1-x)^n B/(n x).
inline double network_utility_exact(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  double sum = 0.0;
  for (int j = 1; j <= m.network_size; ++j) sum += officer_utility_at_rank(m, bribe, j);
  return sum / m.network_size;
}

enum class Activity { Active, NoBribery };

/// Each sub-inequality of the feasibility chain gets its own verdict; the
/// full chain cannot hold under asymmetric punishment, so it is never
/// evaluated as one predicate.
struct FeasibilityReport {
  bool share_exceeds_detection = false;        // x > p
  bool detection_above_network_floor = false;  // p > x / (2 + x(n-1))
  bool harassment_below_per_officer = false;   // p/n > p_h
  bool harassment_above_award_ratio = false;   // p_h > (B + p F_C) / (B + n F_O)
  bool payoff_meets_reservation = false;       // P >= P_min
  Activity activity = Activity::NoBribery;
};

inline FeasibilityReport feasibility_report(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  const double n = m.network_size;
  const double x = m.share;
  const double p = m.detection;
  FeasibilityReport r;
  r.share_exceeds_detection = x - p > kSignTolerance;
  r.detection_above_network_floor = p - x / (2.0 + x * (n - 1.0)) > kSignTolerance;
  r.harassment_below_per_officer = p / n - m.harassment_detection > kSignTolerance;
  const double award_base = bribe + n * m.officer_fine;
  r.harassment_above_award_ratio =
      award_base > 0.0 &&
      m.harassment_detection - (bribe + p * m.citizen_fine) / award_base > kSignTolerance;
  r.payoff_meets_reservation = m.payoff >= m.reservation_payoff;
  const bool no_bribery = p - x > kSignTolerance || !r.payoff_meets_reservation;
  r.activity = no_bribery ? Activity::NoBribery : Activity::Active;
  return r;
}

}  // namespace briberynet
