#pragma once

#include <cstdint>
#include <optional>

#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// A context-bearing statement `consequent | context`. The context is
/// always satisfiable; construction rejects contradictions.
class Statement {
 public:
  const Formula& consequent() const noexcept { return consequent_; }
  const Formula& context() const noexcept { return context_; }
  /// Context is a tautology, so the statement is a bare proposition.
  bool is_plain() const noexcept { return plain_; }

 private:
  friend Statement make_statement(const Space&, const Formula&, const Formula&);
  Statement(Formula consequent, Formula context, bool plain)
      : consequent_(std::move(consequent)), context_(std::move(context)), plain_(plain) {}

  Formula consequent_;
  Formula context_;
  bool plain_;
};

Statement make_statement(const Space& space, const Formula& consequent, const Formula& context);

enum class ContextualOp { Not, And, Or };

/// Negation, conjunction or disjunction inside one context. Binary forms
/// need logically equivalent contexts and keep the first operand's context.
Statement contextual_op(const Space& space, ContextualOp op, const Statement& s,
                        const std::optional<Statement>& t = std::nullopt);

/// `(a | G) | D` becomes `a | (G & D)`.
Statement contextualize(const Space& space, const Statement& s, const Formula& delta);

struct ExtendedSpaceSize {
  std::uint64_t total;              // statement count: propositions x satisfiable contexts
  std::uint64_t proposition_count;  // distinct truth functions, 2^worlds
  std::uint64_t unsat_count;        // truth functions usable as no context
};

/// Counts statements over semantic classes; limited to 16 worlds.
ExtendedSpaceSize extended_space_size(const Space& space);

}  // namespace inferkit
