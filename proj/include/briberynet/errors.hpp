#pragma once

#include <stdexcept>
#include <string>

namespace briberynet {

enum class ErrorKind {
  Domain,               // parameter or argument outside its valid range
  Singularity,          // a denominator vanished
  DegenerateObjective,  // bargaining objective identically zero
  BoundaryHit,          // numerical maximum sits on the search boundary
  NoNetwork,            // no officer accepts the bribe
  Infeasible,           // equilibrium exists but lies outside the active region
  Config,               // scenario file could not be loaded
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::DegenerateObjective: return "degenerate-objective";
    case ErrorKind::BoundaryHit: return "boundary-hit";
    case ErrorKind::NoNetwork: return "no-network";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace briberynet
