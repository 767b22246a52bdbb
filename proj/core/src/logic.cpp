#include "inferkit/logic.hpp"

#include <bit>

#include "inferkit/error.hpp"

namespace inferkit {

WorldSet::WorldSet(std::uint64_t world_count, bool filled)
    : count_(world_count), words_((world_count + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
  trim();
}

void WorldSet::trim() noexcept {
  if (count_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (count_ % 64)) - 1;
  }
}

std::uint64_t WorldSet::size() const noexcept {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

bool WorldSet::empty() const noexcept {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

bool WorldSet::subset_of(const WorldSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

WorldSet& WorldSet::operator&=(const WorldSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

WorldSet& WorldSet::operator|=(const WorldSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

WorldSet& WorldSet::operator^=(const WorldSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

WorldSet WorldSet::complement() const {
  WorldSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

bool evaluate(const Space& space, const Formula& f, const World& world) {
  if (world.values.size() != space.variable_count()) {
    throw Error(ErrorKind::structural, "world does not match the space");
  }
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom:
      if (f.variable() >= space.variable_count() || f.value() >= space.domain_size(f.variable())) {
        throw Error(ErrorKind::structural, "unbound atom " + to_debug_string(f));
      }
      return world.values[f.variable()] == f.value();
    case Formula::Kind::Not: return !evaluate(space, f.lhs(), world);
    case Formula::Kind::Binary:
      return apply(f.connective(), evaluate(space, f.lhs(), world),
                   evaluate(space, f.rhs(), world));
  }
  return false;
}

namespace {

WorldSet atom_set(const Space& space, std::size_t variable, std::size_t value) {
  const std::uint64_t n = space.world_count();
  const std::uint64_t stride = space.stride(variable);
  const std::uint64_t period = stride * space.domain_size(variable);
  WorldSet out(n);
  for (std::uint64_t base = value * stride; base < n; base += period) {
    for (std::uint64_t w = base; w < base + stride; ++w) out.insert(w);
  }
  return out;
}

WorldSet models_unchecked(const Space& space, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return WorldSet(space.world_count(), true);
    case Formula::Kind::False: return WorldSet(space.world_count(), false);
    case Formula::Kind::Atom: return atom_set(space, f.variable(), f.value());
    case Formula::Kind::Not: return models_unchecked(space, f.lhs()).complement();
    case Formula::Kind::Binary: break;
  }
  WorldSet a = models_unchecked(space, f.lhs());
  WorldSet b = models_unchecked(space, f.rhs());
  switch (f.connective()) {
    case Connective::And: a &= b; return a;
    case Connective::Or: a |= b; return a;
    case Connective::Xor: a ^= b; return a;
    case Connective::Iff: a ^= b; return a.complement();
    case Connective::Nand: a &= b; return a.complement();
    case Connective::Nor: a |= b; return a.complement();
    case Connective::Implies: a = a.complement(); a |= b; return a;
    case Connective::ImpliedBy: b = b.complement(); b |= a; return b;
    case Connective::NotImplies: b = b.complement(); a &= b; return a;
    case Connective::NotImpliedBy: a = a.complement(); a &= b; return a;
  }
  return a;
}

}  // namespace

WorldSet models(const Space& space, const Formula& f) {
  space.require_enumerable();
  check_bound(space, f);
  return models_unchecked(space, f);
}

std::vector<TruthRow> truth_table(const Space& space, const Formula& f) {
  const WorldSet set = models(space, f);
  std::vector<TruthRow> rows;
  rows.reserve(space.world_count());
  for (std::uint64_t w = 0; w < space.world_count(); ++w) {
    rows.push_back({space.world_at(w), set.contains(w)});
  }
  return rows;
}

bool equivalent(const Space& space, const Formula& f, const Formula& g) {
  return models(space, f) == models(space, g);
}

bool satisfiable(const Space& space, const Formula& f) { return !models(space, f).empty(); }

bool tautology(const Space& space, const Formula& f) { return models(space, f).full(); }

bool entails(const Space& space, std::span<const Formula> premises, const Formula& conclusion) {
  WorldSet support(space.world_count(), true);
  space.require_enumerable();
  for (const auto& p : premises) support &= models(space, p);
  return support.subset_of(models(space, conclusion));
}

Formula nested_implication(std::span<const Formula> antecedents, const Formula& target) {
  Formula out = target;
  for (std::size_t i = antecedents.size(); i-- > 0;) out = implies(antecedents[i], out);
  return out;
}

Formula conjunction(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::truth();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = out & fs[i];
  return out;
}

Formula disjunction(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::falsity();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = out | fs[i];
  return out;
}

bool import_export_check(const Space& space, std::span<const Formula> antecedents,
                         const Formula& target) {
  if (antecedents.empty()) {
    throw Error(ErrorKind::structural, "import-export chain needs at least two propositions");
  }
  const Formula nested = nested_implication(antecedents, target);
  const Formula flat = implies(conjunction(antecedents), target);
  return equivalent(space, nested, flat);
}

namespace {

Formula nand_not(const Formula& x) { return nand(x, x); }
Formula nand_and(const Formula& x, const Formula& y) { return nand_not(nand(x, y)); }
Formula nand_or(const Formula& x, const Formula& y) { return nand(nand_not(x), nand_not(y)); }

}  // namespace

Formula compile_nand(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return f;
    case Formula::Kind::Not: return nand_not(compile_nand(f.lhs()));
    case Formula::Kind::Binary: break;
  }
  const Formula a = compile_nand(f.lhs());
  const Formula b = compile_nand(f.rhs());
  switch (f.connective()) {
    case Connective::Nand: return nand(a, b);
    case Connective::And: return nand_and(a, b);
    case Connective::Or: return nand_or(a, b);
    case Connective::Nor: return nand_not(nand_or(a, b));
    case Connective::Implies: return nand(a, nand_not(b));
    case Connective::ImpliedBy: return nand(b, nand_not(a));
    case Connective::NotImplies: return nand_and(a, nand_not(b));
    case Connective::NotImpliedBy: return nand_and(nand_not(a), b);
    case Connective::Xor: {
      const Formula m = nand(a, b);
      return nand(nand(a, m), nand(b, m));
    }
    case Connective::Iff: {
      const Formula m = nand(a, b);
      return nand_not(nand(nand(a, m), nand(b, m)));
    }
  }
  return f;
}

bool is_nand_only(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not: return false;
    case Formula::Kind::Binary:
      return f.connective() == Connective::Nand && is_nand_only(f.lhs()) && is_nand_only(f.rhs());
  }
  return false;
}

SetClassification classify_set(const Space& space, std::span<const Formula> fs) {
  if (fs.empty()) throw Error(ErrorKind::structural, "classify_set needs at least one formula");
  std::vector<WorldSet> sets;
  sets.reserve(fs.size());
  for (const auto& f : fs) sets.push_back(models(space, f));

  SetClassification out{true, false};
  for (std::size_t i = 0; i < sets.size() && out.mutually_exclusive; ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      WorldSet both = sets[i];
      both &= sets[j];
      if (!both.empty()) {
        out.mutually_exclusive = false;
        break;
      }
    }
  }
  WorldSet any(space.world_count());
  for (const auto& s : sets) any |= s;
  out.exhaustive = any.full();
  return out;
}

const std::vector<BinaryOperator>& binary_operators() {
  using F = Formula;
  static const std::vector<BinaryOperator> ops = {
      {"true", "true", [](const F&, const F&) { return F::truth(); }},
      {"false", "false", [](const F&, const F&) { return F::falsity(); }},
      {"id_a", "a", [](const F& a, const F&) { return a; }},
      {"id_b", "b", [](const F&, const F& b) { return b; }},
      {"not_a", "!a", [](const F& a, const F&) { return !a; }},
      {"not_b", "!b", [](const F&, const F& b) { return !b; }},
      {"and", "a & b", [](const F& a, const F& b) { return a & b; }},
      {"or", "a | b", [](const F& a, const F& b) { return a | b; }},
      {"nand", "a !& b", [](const F& a, const F& b) { return nand(a, b); }},
      {"nor", "a !| b", [](const F& a, const F& b) { return nor(a, b); }},
      {"xor", "a ^ b", [](const F& a, const F& b) { return a ^ b; }},
      {"iff", "a <-> b", [](const F& a, const F& b) { return iff(a, b); }},
      {"implies", "a -> b", [](const F& a, const F& b) { return implies(a, b); }},
      {"implied_by", "a <- b", [](const F& a, const F& b) { return implied_by(a, b); }},
      {"not_implies", "!(a -> b)",
       [](const F& a, const F& b) { return F::binary(Connective::NotImplies, a, b); }},
      {"not_implied_by", "!(a <- b)",
       [](const F& a, const F& b) { return F::binary(Connective::NotImpliedBy, a, b); }},
  };
  return ops;
}

std::uint64_t evaluate_schema(const Formula& schema, std::span<const std::uint64_t> bindings,
                              std::uint64_t world_mask) {
  switch (schema.kind()) {
    case Formula::Kind::True: return world_mask;
    case Formula::Kind::False: return 0;
    case Formula::Kind::Atom:
      if (schema.variable() >= bindings.size()) {
        throw Error(ErrorKind::structural, "schema atom has no binding");
      }
      return bindings[schema.variable()] & world_mask;
    case Formula::Kind::Not: return ~evaluate_schema(schema.lhs(), bindings, world_mask) & world_mask;
    case Formula::Kind::Binary: break;
  }
  const std::uint64_t a = evaluate_schema(schema.lhs(), bindings, world_mask);
  const std::uint64_t b = evaluate_schema(schema.rhs(), bindings, world_mask);
  std::uint64_t r = 0;
  switch (schema.connective()) {
    case Connective::And: r = a & b; break;
    case Connective::Or: r = a | b; break;
    case Connective::Implies: r = ~a | b; break;
    case Connective::ImpliedBy: r = a | ~b; break;
    case Connective::Iff: r = ~(a ^ b); break;
    case Connective::Xor: r = a ^ b; break;
    case Connective::Nand: r = ~(a & b); break;
    case Connective::Nor: r = ~(a | b); break;
    case Connective::NotImplies: r = a & ~b; break;
    case Connective::NotImpliedBy: r = ~a & b; break;
  }
  return r & world_mask;
}

}  // namespace inferkit
