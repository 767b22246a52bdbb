#include "inferkit/identities.hpp"

#include <algorithm>

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"

namespace inferkit {

const std::vector<Identity>& identity_catalog() {
  const Formula a = Formula::atom(0, 0);
  const Formula b = Formula::atom(1, 0);
  const Formula c = Formula::atom(2, 0);
  static const std::vector<Identity> laws = {
      {"idempotence-and", 1, a & a, a},
      {"idempotence-or", 1, a | a, a},
      {"de-morgan-and", 2, !(a & b), (!a) | (!b)},
      {"de-morgan-or", 2, !(a | b), (!a) & (!b)},
      {"absorption-and", 2, (a & b) | b, b},
      {"absorption-or", 2, (a | b) & b, b},
      {"exclusivity-xor", 2, a ^ b, (a | b) & !(a & b)},
      {"exclusivity-iff", 2, iff(a, b), (a & b) | !(a | b)},
      {"or-via-and", 2, a | b, !((!a) & (!b))},
      {"and-via-or", 2, a & b, !((!a) | (!b))},
      {"commutative-and", 2, a & b, b & a},
      {"commutative-or", 2, a | b, b | a},
      {"associative-and", 3, (a & b) & c, a & (b & c)},
      {"associative-or", 3, (a | b) | c, a | (b | c)},
      {"distributive-or", 3, a | (b & c), (a | b) & (a | c)},
      {"distributive-and", 3, a & (b | c), (a & b) | (a & c)},
      {"double-negation", 1, !!a, a},
      {"excluded-middle", 1, a | !a, Formula::truth()},
      {"non-contradiction", 1, a & !a, Formula::falsity()},
      {"implication-as-or", 2, implies(a, b), (!a) | b},
      {"implication-as-nand", 2, implies(a, b), !(a & !b)},
      {"import-export", 3, implies(a, implies(b, c)), implies(a & b, c)},
      {"exchange", 3, implies(a, implies(b, c)), implies(b, implies(a, c))},
      {"self-distributive-implication", 3, implies(implies(a, implies(b, c)),
                                                   implies(implies(a, b), implies(a, c))),
       Formula::truth()},
  };
  return laws;
}

const Identity* find_identity(std::string_view name) {
  for (const auto& law : identity_catalog()) {
    if (law.name == name) return &law;
  }
  return nullptr;
}

const std::vector<InferenceRule>& inference_rules() {
  const Formula a = Formula::atom(0, 0);
  const Formula b = Formula::atom(1, 0);
  const Formula c = Formula::atom(2, 0);
  const Formula d = Formula::atom(3, 0);
  static const std::vector<InferenceRule> rules = {
      {"modus-ponens", 2, {a, implies(a, b)}, b},
      {"modus-tollens", 2, {!b, implies(a, b)}, !a},
      {"conjunction-introduction", 2, {a, b}, a & b},
      {"simplification", 2, {a & b}, a},
      {"disjunction-introduction", 2, {a}, a | b},
      {"disjunction-elimination", 3, {implies(a, c), implies(b, c), a | b}, c},
      {"modus-tollendo-ponens", 2, {a | b, !a}, b},
      {"constructive-dilemma", 4, {implies(a, b), implies(c, d), a | c}, b | d},
      {"explosion", 2, {a & !a}, b},
  };
  return rules;
}

namespace {

// Postfix form of a schema, so the enumeration loop avoids walking the tree.
class SchemaProgram {
 public:
  explicit SchemaProgram(const Formula& f) { compile(f); }

  std::uint64_t run(const std::vector<std::uint64_t>& bindings, std::uint64_t mask) const {
    std::uint64_t stack[kMaxDepth];
    std::size_t top = 0;
    for (const Step& s : steps_) {
      switch (s.kind) {
        case Formula::Kind::True: stack[top++] = mask; break;
        case Formula::Kind::False: stack[top++] = 0; break;
        case Formula::Kind::Atom: stack[top++] = bindings[s.variable]; break;
        case Formula::Kind::Not: stack[top - 1] = ~stack[top - 1] & mask; break;
        case Formula::Kind::Binary: {
          const std::uint64_t b = stack[--top];
          const std::uint64_t a = stack[top - 1];
          stack[top - 1] = combine(s.op, a, b) & mask;
          break;
        }
      }
    }
    return stack[0];
  }

 private:
  static constexpr std::size_t kMaxDepth = 64;

  struct Step {
    Formula::Kind kind;
    Connective op;
    std::size_t variable;
  };

  static std::uint64_t combine(Connective op, std::uint64_t a, std::uint64_t b) {
    switch (op) {
      case Connective::And: return a & b;
      case Connective::Or: return a | b;
      case Connective::Implies: return ~a | b;
      case Connective::ImpliedBy: return a | ~b;
      case Connective::Iff: return ~(a ^ b);
      case Connective::Xor: return a ^ b;
      case Connective::Nand: return ~(a & b);
      case Connective::Nor: return ~(a | b);
      case Connective::NotImplies: return a & ~b;
      case Connective::NotImpliedBy: return ~a & b;
    }
    return 0;
  }

  std::size_t compile(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        steps_.push_back({f.kind(), Connective::And, 0});
        return 1;
      case Formula::Kind::Atom:
        steps_.push_back({f.kind(), Connective::And, f.variable()});
        return 1;
      case Formula::Kind::Not: {
        const std::size_t d = compile(f.lhs());
        steps_.push_back({f.kind(), Connective::And, 0});
        return d;
      }
      case Formula::Kind::Binary: {
        const std::size_t dl = compile(f.lhs());
        const std::size_t dr = compile(f.rhs());
        steps_.push_back({f.kind(), f.connective(), 0});
        const std::size_t d = std::max(dl, dr + 1);
        if (d > kMaxDepth) throw Error(ErrorKind::capacity, "schema is too deep");
        return d;
      }
    }
    return 0;
  }

  std::vector<Step> steps_;
};

void check_bindings(const Formula& f, std::size_t arity) {
  if (f.kind() == Formula::Kind::Atom) {
    if (f.variable() >= arity) throw Error(ErrorKind::structural, "schema atom has no binding");
    return;
  }
  if (f.kind() == Formula::Kind::Not) check_bindings(f.lhs(), arity);
  if (f.kind() == Formula::Kind::Binary) {
    check_bindings(f.lhs(), arity);
    check_bindings(f.rhs(), arity);
  }
}

// Runs `check` over every assignment of truth tables to `arity` placeholders.
template <typename Check>
IdentityReport enumerate(std::size_t arity, unsigned atom_count, Check check) {
  if (atom_count == 0 || atom_count > 3) {
    throw Error(ErrorKind::capacity, "identity enumeration supports 1 to 3 atoms");
  }
  const unsigned worlds = 1u << atom_count;
  const std::uint64_t mask = (std::uint64_t{1} << worlds) - 1;
  const std::uint64_t functions = mask + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    total *= functions;
    if (total > (std::uint64_t{1} << 25)) {
      throw Error(ErrorKind::capacity, "too many substitution instances; use fewer atoms");
    }
  }
  std::vector<std::uint64_t> binding(arity, 0);

  IdentityReport report;
  while (true) {
    ++report.instances;
    if (!check(binding, mask)) ++report.failures;
    std::size_t i = 0;
    while (i < arity && ++binding[i] == functions) binding[i++] = 0;
    if (i == arity) break;
  }
  return report;
}

}  // namespace

IdentityReport verify_identity(const Identity& law, unsigned atom_count) {
  check_bindings(law.lhs, law.arity);
  check_bindings(law.rhs, law.arity);
  const SchemaProgram lhs(law.lhs);
  const SchemaProgram rhs(law.rhs);
  return enumerate(law.arity, atom_count, [&](const std::vector<std::uint64_t>& bind, std::uint64_t mask) {
    return lhs.run(bind, mask) == rhs.run(bind, mask);
  });
}

IdentityReport verify_rule(const InferenceRule& rule, unsigned atom_count) {
  std::vector<SchemaProgram> premises;
  for (const auto& p : rule.premises) {
    check_bindings(p, rule.arity);
    premises.emplace_back(p);
  }
  check_bindings(rule.conclusion, rule.arity);
  const SchemaProgram conclusion(rule.conclusion);
  return enumerate(rule.arity, atom_count, [&](const std::vector<std::uint64_t>& bind, std::uint64_t mask) {
    std::uint64_t held = mask;
    for (const auto& p : premises) held &= p.run(bind, mask);
    return (held & ~conclusion.run(bind, mask)) == 0;
  });
}

}  // namespace inferkit
