#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// Parses formula text against a declared space.
///
/// Grammar, loosest binding first:
///   iff     := imp ( ("<->" | "⇔" | "↔") imp )*
///   imp     := or ( ("->" | "⇒" | "→" | "<-" | "⇐" | "⇏" | "⇍") imp )?
///   or      := and ( ("|" | "∨" | "^" | "⊻" | "!|" | "↓") and )*
///   and     := unary ( ("&" | "∧" | "!&" | "↑") unary )*
///   unary   := ("!" | "¬") unary | primary
///   primary := "true" | "false" | "⊤" | "⊥" | name | name "=" value | "(" iff ")"
///
/// A bare `name` means `name=T` and needs a binary variable. Syntax errors
/// report a 1-based column; unknown names and values raise unknown-symbol.
Formula parse_formula(std::string_view text, const Space& space);

struct ParsedFormulas {
  Space space;
  std::vector<Formula> formulas;
};

/// Parses formulas whose atoms are binary variables, building the space
/// from the names in order of first appearance.
ParsedFormulas parse_binary_formulas(std::span<const std::string> texts);

}  // namespace inferkit
