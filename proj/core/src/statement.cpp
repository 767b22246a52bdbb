#include "inferkit/statement.hpp"

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"

namespace inferkit {

Statement make_statement(const Space& space, const Formula& consequent, const Formula& context) {
  check_bound(space, consequent);
  const WorldSet ctx = models(space, context);
  if (ctx.empty()) {
    throw Error(ErrorKind::contradiction_context,
                "context " + to_string(context, space) + " is a contradiction");
  }
  return Statement(consequent, context, ctx.full());
}

Statement contextual_op(const Space& space, ContextualOp op, const Statement& s,
                        const std::optional<Statement>& t) {
  if (op == ContextualOp::Not) {
    return make_statement(space, !s.consequent(), s.context());
  }
  if (!t) throw Error(ErrorKind::structural, "binary contextual operation needs two statements");
  if (!equivalent(space, s.context(), t->context())) {
    throw Error(ErrorKind::cross_context, "statements live in different contexts: " +
                                              to_string(s.context(), space) + " vs " +
                                              to_string(t->context(), space));
  }
  const Formula combined = op == ContextualOp::And ? (s.consequent() & t->consequent())
                                                   : (s.consequent() | t->consequent());
  return make_statement(space, combined, s.context());
}

Statement contextualize(const Space& space, const Statement& s, const Formula& delta) {
  const Formula ctx = s.is_plain() ? delta : (s.context() & delta);
  return make_statement(space, s.consequent(), ctx);
}

ExtendedSpaceSize extended_space_size(const Space& space) {
  const std::uint64_t worlds = space.world_count();
  if (worlds > 16) {
    throw Error(ErrorKind::capacity, "extended-space counting is limited to 16 worlds");
  }
  const std::uint64_t propositions = std::uint64_t{1} << worlds;
  // Only the truth function holding in no world is a contradiction.
  const std::uint64_t unsat = 1;
  return {propositions * (propositions - unsat), propositions, unsat};
}

}  // namespace inferkit
