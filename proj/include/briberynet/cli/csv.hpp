#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "briberynet/aggregate.hpp"
#include "briberynet/comparative_statics.hpp"
#include "briberynet/errors.hpp"
#include "briberynet/network.hpp"

namespace briberynet::cli {

/// Nine significant digits, the fixed numeric format of every CSV column.
/// Non-finite values are refused; missing values are written as empty fields.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Singularity, "refusing to write a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

inline const char* format_flag(bool b) { return b ? "1" : "0"; }

/// `p,B_star,feasible` or `p_h,B_star,feasible`; an optional comment line
/// records a parameter held fixed during the sweep.
inline std::string bribe_sweep_csv(const std::vector<BribeSweepRow>& rows, SweepAxis axis,
                                   const std::optional<double>& fixed_detection = std::nullopt) {
  std::ostringstream os;
  if (fixed_detection) os << "# p=" << format_number(*fixed_detection) << '\n';
  os << (axis == SweepAxis::Detection ? "p" : "p_h") << ",B_star,feasible\n";
  for (const auto& r : rows)
    os << format_number(r.value) << ',' << format_optional(r.bribe) << ',' << format_flag(r.feasible) << '\n';
  return os.str();
}

/// `p,m1,B_star,feasible` or `p_h,m1,B_star,feasible`.
inline std::string count_sweep_csv(const std::vector<CountSweepRow>& rows, SweepAxis axis,
                                   const std::optional<double>& fixed_detection = std::nullopt) {
  std::ostringstream os;
  if (fixed_detection) os << "# p=" << format_number(*fixed_detection) << '\n';
  os << (axis == SweepAxis::Detection ? "p" : "p_h") << ",m1,B_star,feasible\n";
  for (const auto& r : rows)
    os << format_number(r.value) << ',' << format_optional(r.m1) << ',' << format_optional(r.bribe)
       << ',' << format_flag(r.feasible) << '\n';
  return os.str();
}

/// `rank,share,utility,in_network`.
inline std::string chain_csv(const OfficerChain& chain) {
  std::ostringstream os;
  os << "rank,share,utility,in_network\n";
  for (const auto& e : chain.entries)
    os << e.rank << ',' << format_number(e.share) << ',' << format_number(e.utility) << ','
       << format_flag(e.in_network) << '\n';
  return os.str();
}

}  // namespace briberynet::cli
