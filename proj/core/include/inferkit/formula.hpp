#pragma once

#include <cstddef>
#include <memory>
#include <string>

namespace inferkit {

class Space;

/// Binary connectives that have their own node type. Together with the atom
/// projections and the two constants they cover all sixteen binary truth
/// functions.
enum class Connective {
  And,
  Or,
  Implies,
  ImpliedBy,
  Iff,
  Xor,
  Nand,
  Nor,
  NotImplies,
  NotImpliedBy,
};

/// Truth value of `lhs op rhs`.
bool apply(Connective op, bool lhs, bool rhs) noexcept;

/// Immutable propositional formula over equality atoms `variable = value`.
/// Copies share structure; equality is structural, never logical.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, Binary };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::size_t variable, std::size_t value);
  static Formula negation(Formula operand);
  static Formula binary(Connective op, Formula lhs, Formula rhs);

  Kind kind() const noexcept;
  /// Valid for Binary nodes.
  Connective connective() const;
  /// Operand of a Not node, or left operand of a Binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;
  std::size_t variable() const;
  std::size_t value() const;

  std::size_t depth() const noexcept;
  std::size_t node_count() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  Formula() = default;  // empty child slot inside Node
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula operator^(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula implied_by(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);
Formula nand(const Formula& a, const Formula& b);
Formula nor(const Formula& a, const Formula& b);

/// Throws a structural error unless every atom names a variable and value of `space`.
void check_bound(const Space& space, const Formula& f);

/// Renumbers atom variables by `offset`; lifts a formula into a product space.
Formula shift_variables(const Formula& f, std::size_t offset);

/// ASCII rendering in the tool's formula grammar. `name=T` on a binary
/// variable prints as the bare name; other atoms print as `name=value`.
/// Connectives outside the grammar are expanded (`a <- b` prints as
/// `b -> a`), so re-parsing yields an equivalent, not identical, tree.
std::string to_string(const Formula& f, const Space& space);

/// Language-neutral rendering without a space: `v0=1`, `~`, `&`, `|`, ...
std::string to_debug_string(const Formula& f);

}  // namespace inferkit
