#pragma once

// The bribe travels up the ranks; each officer keeps a fraction x of what
// reaches him. Rank j's expected utility is
//
//   U_j = (1 - x)^(j-1) B (x - p) - p F_O,
//
// which falls with j when x > p. The chain stops at the last officer with
// strictly positive utility, who is also the one approving the request.

#include <cmath>
#include <optional>
#include <vector>

#include "briberynet/errors.hpp"
#include "briberynet/model.hpp"

namespace briberynet {

inline constexpr int kDefaultMaxRank = 256;

struct ChainEntry {
  int rank = 0;
  double share = 0.0;  // part of the bribe this rank keeps
  double utility = 0.0;
  bool in_network = false;
};

struct OfficerChain {
  std::vector<ChainEntry> entries;
  int termination_index = 0;  // last rank with positive utility, 0 if none
  int approver_rank = 0;
  /// Termination index from the logarithmic closed form; empty when the
  /// utilities never turn non-positive (p F_O = 0).
  std::optional<long> closed_form_index;
  /// Utility was still positive at max_rank, so the scan stopped early.
  bool truncated = false;
};

/// Closed-form termination index: 0 if rank 1 already declines, otherwise
/// ceil(ln(p F_O / (B (x - p))) / ln(1 - x)). Exact ties count as declining.
inline std::optional<long> termination_index_closed_form(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  const double lead = bribe * (m.share - m.detection);
  const double fine = m.detection * m.officer_fine;
  if (lead - fine <= kSignTolerance) return 0L;
  if (fine <= 0.0) return std::nullopt;
  const double t = std::log(fine / lead) / std::log(1.0 - m.share);
  return static_cast<long>(std::ceil(t));
}

inline OfficerChain build_chain(const ModelParams& m, double bribe, int max_rank) {
  validate(m);
  require_nonnegative_bribe(bribe);
  if (max_rank < 1) throw Error(ErrorKind::Domain, "max_rank must be >= 1");
  OfficerChain chain;
  chain.entries.reserve(static_cast<std::size_t>(max_rank));
  bool accepting = true;
  for (int j = 1; j <= max_rank; ++j) {
    ChainEntry e;
    e.rank = j;
    e.share = m.share * std::pow(1.0 - m.share, j - 1) * bribe;
    e.utility = officer_utility_at_rank(m, bribe, j);
    accepting = accepting && e.utility > kSignTolerance;
    e.in_network = accepting;
    if (accepting) chain.termination_index = j;
    chain.entries.push_back(e);
  }
  chain.approver_rank = chain.termination_index;
  chain.closed_form_index = termination_index_closed_form(m, bribe);
  chain.truncated = chain.termination_index == max_rank;
  return chain;
}

/// Boundary game between the last accepting rank n* (Stop or ShareFurther)
/// and rank n*+1 (Accept or Reject).
struct CollusionCheck {
  int boundary_rank = 0;  // n*
  double share_further_payoff = 0.0;
  double stop_payoff = 0.0;
  double accept_payoff = 0.0;
  double reject_payoff = 0.0;  // refusing carries no detection risk
  bool is_nash = false;
};

inline CollusionCheck collusion_check(const ModelParams& m, double bribe,
                                      int max_rank = kDefaultMaxRank) {
  const OfficerChain chain = build_chain(m, bribe, max_rank);
  const int boundary = chain.termination_index;
  if (boundary == 0) throw Error(ErrorKind::NoNetwork, "no officer accepts the bribe");
  CollusionCheck c;
  c.boundary_rank = boundary;
  c.stop_payoff = officer_utility_at_rank(m, bribe, boundary);
  // Passing the remainder on hands rank n*+1 the share x of what is left,
  // which is worth that rank's utility.
  c.share_further_payoff = officer_utility_at_rank(m, bribe, boundary + 1);
  c.accept_payoff = c.share_further_payoff;
  c.reject_payoff = 0.0;
  c.is_nash = c.stop_payoff >= c.share_further_payoff && c.reject_payoff >= c.accept_payoff;
  return c;
}

enum class ChainStatus { Active, Failed };

struct EliteOutcome {
  ChainStatus status = ChainStatus::Failed;
  OfficerChain chain;
};

/// Places an officer who refuses every bribe at `elite_rank`. Inside the
/// active chain this blocks approval; beyond it nothing changes.
inline EliteOutcome elite_injection(const ModelParams& m, double bribe, int elite_rank,
                                    int max_rank = kDefaultMaxRank) {
  if (elite_rank < 1) throw Error(ErrorKind::Domain, "elite rank must be >= 1");
  EliteOutcome out;
  out.chain = build_chain(m, bribe, max_rank);
  if (out.chain.termination_index == 0) {
    out.status = ChainStatus::Failed;
    return out;
  }
  if (elite_rank > out.chain.termination_index) {
    out.status = ChainStatus::Active;
    return out;
  }
  out.status = ChainStatus::Failed;
  for (auto& e : out.chain.entries)
    if (e.rank >= elite_rank) e.in_network = false;
  out.chain.termination_index = elite_rank - 1;
  out.chain.approver_rank = 0;
  out.chain.truncated = false;
  return out;
}

}  // namespace briberynet
