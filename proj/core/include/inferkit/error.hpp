#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inferkit {

/// Failure categories. The command-line tool prints these as the
/// `error:<category>:` prefix, so the spelling returned by
/// `category_name` is part of the tool's output contract.
enum class ErrorKind {
  structural,           // malformed space, unbound atom, bad block index
  capacity,             // exhaustive operation over too many worlds
  contradiction_context,
  cross_context,
  conditioning,         // satisfiable context with zero probability mass
  zero_evidence,
  mutual_exclusivity,
  closure,
  monotonicity,
  structure,            // no identity element in a combination table
  not_pexider,
  support,              // p > 0 where q = 0
  feasibility,
  convergence,
  block_count,
  bijection,
  split_violation,
  syntax,
  unknown_symbol,
  domain,               // numeric argument outside its admissible range
  io,
};

std::string_view category_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Convergence failure that still carries the best residual reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double best_residual)
      : Error(ErrorKind::convergence, message), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace inferkit
