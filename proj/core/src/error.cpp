#include "inferkit/error.hpp"

namespace inferkit {

std::string_view category_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::contradiction_context: return "contradiction-context";
    case ErrorKind::cross_context: return "cross-context";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::zero_evidence: return "zero-evidence";
    case ErrorKind::mutual_exclusivity: return "mutual-exclusivity";
    case ErrorKind::closure: return "closure";
    case ErrorKind::monotonicity: return "monotonicity";
    case ErrorKind::structure: return "structure";
    case ErrorKind::not_pexider: return "not-pexider";
    case ErrorKind::support: return "support";
    case ErrorKind::feasibility: return "feasibility";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::block_count: return "block-count";
    case ErrorKind::bijection: return "bijection";
    case ErrorKind::split_violation: return "split-violation";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::unknown_symbol: return "unknown-symbol";
    case ErrorKind::domain: return "domain";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace inferkit
