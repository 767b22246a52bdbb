#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "inferkit/formula.hpp"

namespace inferkit {

/// A propositional law `lhs <-> rhs` stated over placeholders. Placeholder
/// i is the atom with variable index i (value ignored).
struct Identity {
  std::string_view name;
  std::size_t arity;
  Formula lhs;
  Formula rhs;
};

/// A sequent `premises |- conclusion` over placeholders.
struct InferenceRule {
  std::string_view name;
  std::size_t arity;
  std::vector<Formula> premises;
  Formula conclusion;
};

/// Algebra-of-propositions laws: idempotence, De Morgan, absorption,
/// exclusivity (both duals), the and/or interdefinitions, distributivity,
/// material implication rewrites, and import-export for three terms.
const std::vector<Identity>& identity_catalog();
const Identity* find_identity(std::string_view name);

/// Valid propositional inference rules (modus ponens, modus tollens, ...).
const std::vector<InferenceRule>& inference_rules();

struct IdentityReport {
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
};

/// Substitutes every truth function over `atom_count` binary atoms
/// (atom_count <= 3) for every placeholder and compares both sides.
IdentityReport verify_identity(const Identity& identity, unsigned atom_count);

/// Same, for an inference rule: counts substitutions where the premises
/// hold in some world and the conclusion does not.
IdentityReport verify_rule(const InferenceRule& rule, unsigned atom_count);

}  // namespace inferkit
