#include "inferkit/formula.hpp"

#include <algorithm>

#include "inferkit/error.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

struct Formula::Node {
  explicit Node(Kind k) : kind(k) {}

  Kind kind;
  Connective op = Connective::And;
  std::size_t variable = 0;
  std::size_t value = 0;
  Formula lhs;
  Formula rhs;
  std::size_t depth = 0;
  std::size_t count = 1;
};

bool apply(Connective op, bool a, bool b) noexcept {
  switch (op) {
    case Connective::And: return a && b;
    case Connective::Or: return a || b;
    case Connective::Implies: return !a || b;
    case Connective::ImpliedBy: return a || !b;
    case Connective::Iff: return a == b;
    case Connective::Xor: return a != b;
    case Connective::Nand: return !(a && b);
    case Connective::Nor: return !(a || b);
    case Connective::NotImplies: return a && !b;
    case Connective::NotImpliedBy: return !a && b;
  }
  return false;
}

Formula Formula::truth() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True});
  return Formula(node);
}

Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False});
  return Formula(node);
}

Formula Formula::atom(std::size_t variable, std::size_t value) {
  Node n{Kind::Atom};
  n.variable = variable;
  n.value = value;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula operand) {
  Node n{Kind::Not};
  n.depth = operand.node_->depth + 1;
  n.count = operand.node_->count + 1;
  n.lhs = std::move(operand);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::binary(Connective op, Formula lhs, Formula rhs) {
  Node n{Kind::Binary};
  n.op = op;
  n.depth = std::max(lhs.node_->depth, rhs.node_->depth) + 1;
  n.count = lhs.node_->count + rhs.node_->count + 1;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

Connective Formula::connective() const {
  if (node_->kind != Kind::Binary) throw Error(ErrorKind::structural, "not a binary node");
  return node_->op;
}

const Formula& Formula::lhs() const {
  if (node_->kind != Kind::Not && node_->kind != Kind::Binary) {
    throw Error(ErrorKind::structural, "node has no operands");
  }
  return node_->lhs;
}

const Formula& Formula::rhs() const {
  if (node_->kind != Kind::Binary) throw Error(ErrorKind::structural, "not a binary node");
  return node_->rhs;
}

std::size_t Formula::variable() const {
  if (node_->kind != Kind::Atom) throw Error(ErrorKind::structural, "not an atom");
  return node_->variable;
}

std::size_t Formula::value() const {
  if (node_->kind != Kind::Atom) throw Error(ErrorKind::structural, "not an atom");
  return node_->value;
}

std::size_t Formula::depth() const noexcept { return node_->depth; }
std::size_t Formula::node_count() const noexcept { return node_->count; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.count != y.count) return false;
  switch (x.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Atom: return x.variable == y.variable && x.value == y.value;
    case Formula::Kind::Not: return a.lhs() == b.lhs();
    case Formula::Kind::Binary:
      return x.op == y.op && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::binary(Connective::And, a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::binary(Connective::Or, a, b); }
Formula operator^(const Formula& a, const Formula& b) { return Formula::binary(Connective::Xor, a, b); }
Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Connective::Implies, a, b); }
Formula implied_by(const Formula& a, const Formula& b) { return Formula::binary(Connective::ImpliedBy, a, b); }
Formula iff(const Formula& a, const Formula& b) { return Formula::binary(Connective::Iff, a, b); }
Formula nand(const Formula& a, const Formula& b) { return Formula::binary(Connective::Nand, a, b); }
Formula nor(const Formula& a, const Formula& b) { return Formula::binary(Connective::Nor, a, b); }

void check_bound(const Space& space, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    case Formula::Kind::Atom:
      if (f.variable() >= space.variable_count() ||
          f.value() >= space.domain_size(f.variable())) {
        throw Error(ErrorKind::structural, "atom " + to_debug_string(f) + " is not bound to the space");
      }
      return;
    case Formula::Kind::Not: check_bound(space, f.lhs()); return;
    case Formula::Kind::Binary:
      check_bound(space, f.lhs());
      check_bound(space, f.rhs());
      return;
  }
}

Formula shift_variables(const Formula& f, std::size_t offset) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: return Formula::atom(f.variable() + offset, f.value());
    case Formula::Kind::Not: return !shift_variables(f.lhs(), offset);
    case Formula::Kind::Binary:
      return Formula::binary(f.connective(), shift_variables(f.lhs(), offset),
                             shift_variables(f.rhs(), offset));
  }
  return f;
}

namespace {

// Grammar precedence: ! > & !& > | ^ !| > -> > <->
int precedence(Connective op) {
  switch (op) {
    case Connective::And:
    case Connective::Nand: return 4;
    case Connective::Or:
    case Connective::Xor:
    case Connective::Nor: return 3;
    case Connective::Implies: return 2;
    case Connective::Iff: return 1;
    default: return 0;  // expanded before printing
  }
}

bool associative(Connective op) {
  return op == Connective::And || op == Connective::Or || op == Connective::Xor ||
         op == Connective::Iff;
}

const char* symbol(Connective op) {
  switch (op) {
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Xor: return " ^ ";
    case Connective::Nand: return " !& ";
    case Connective::Nor: return " !| ";
    case Connective::Implies: return " -> ";
    case Connective::Iff: return " <-> ";
    default: return " ? ";
  }
}

// Rewrites the three connectives the grammar has no token for.
Formula printable(const Formula& f) {
  if (f.kind() != Formula::Kind::Binary) return f;
  switch (f.connective()) {
    case Connective::ImpliedBy: return implies(f.rhs(), f.lhs());
    case Connective::NotImplies: return !implies(f.lhs(), f.rhs());
    case Connective::NotImpliedBy: return !implies(f.rhs(), f.lhs());
    default: return f;
  }
}

template <typename AtomWriter>
void render(const Formula& input, std::string& out, const AtomWriter& atom) {
  const Formula f = printable(input);
  switch (f.kind()) {
    case Formula::Kind::True: out += "true"; return;
    case Formula::Kind::False: out += "false"; return;
    case Formula::Kind::Atom: atom(f, out); return;
    case Formula::Kind::Not: {
      out += '!';
      const Formula operand = printable(f.lhs());
      const bool wrap = operand.kind() == Formula::Kind::Binary;
      if (wrap) out += '(';
      render(operand, out, atom);
      if (wrap) out += ')';
      return;
    }
    case Formula::Kind::Binary: {
      const Connective op = f.connective();
      const int p = precedence(op);
      const Formula left = printable(f.lhs());
      const Formula right = printable(f.rhs());
      auto needs_parens = [&](const Formula& child, bool is_left) {
        if (child.kind() != Formula::Kind::Binary) return false;
        const Connective cop = child.connective();
        const int cp = precedence(cop);
        if (cp != p) return cp < p;
        if (cop != op) return true;
        if (op == Connective::Implies) return is_left;
        return !(associative(op) && is_left);
      };
      const bool wl = needs_parens(left, true);
      const bool wr = needs_parens(right, false);
      if (wl) out += '(';
      render(left, out, atom);
      if (wl) out += ')';
      out += symbol(op);
      if (wr) out += '(';
      render(right, out, atom);
      if (wr) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f, const Space& space) {
  check_bound(space, f);
  std::string out;
  render(f, out, [&space](const Formula& a, std::string& s) {
    const auto& var = space.variable(a.variable());
    s += var.name;
    if (space.is_binary(a.variable()) && a.value() == 0) return;
    s += '=';
    s += var.domain[a.value()];
  });
  return out;
}

std::string to_debug_string(const Formula& f) {
  std::string out;
  render(f, out, [](const Formula& a, std::string& s) {
    s += 'v';
    s += std::to_string(a.variable());
    s += '=';
    s += std::to_string(a.value());
  });
  return out;
}

}  // namespace inferkit
