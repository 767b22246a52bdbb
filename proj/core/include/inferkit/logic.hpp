#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// Set of world indices of a space, stored as a bitmap. This is the
/// semantic value of a formula: the worlds in which it is true.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::uint64_t world_count, bool filled = false);

  std::uint64_t world_count() const noexcept { return count_; }
  bool contains(std::uint64_t world) const noexcept {
    return (words_[world >> 6] >> (world & 63)) & 1u;
  }
  void insert(std::uint64_t world) noexcept { words_[world >> 6] |= std::uint64_t{1} << (world & 63); }

  std::uint64_t size() const noexcept;
  bool empty() const noexcept;
  bool full() const noexcept { return size() == count_; }
  bool subset_of(const WorldSet& other) const noexcept;

  WorldSet& operator&=(const WorldSet& other) noexcept;
  WorldSet& operator|=(const WorldSet& other) noexcept;
  WorldSet& operator^=(const WorldSet& other) noexcept;
  WorldSet complement() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int bit = __builtin_ctzll(bits);
        fn(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(bit));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const WorldSet& other) const noexcept {
    return count_ == other.count_ && words_ == other.words_;
  }

 private:
  void trim() noexcept;

  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Structural-recursion valuation of `f` at one world.
bool evaluate(const Space& space, const Formula& f, const World& world);

/// Worlds of `space` in which `f` holds. Capacity-guarded at 2^24 worlds.
WorldSet models(const Space& space, const Formula& f);

struct TruthRow {
  World world;
  bool value;
};

/// One row per world, in normative world order.
std::vector<TruthRow> truth_table(const Space& space, const Formula& f);

bool equivalent(const Space& space, const Formula& f, const Formula& g);
bool satisfiable(const Space& space, const Formula& f);
bool tautology(const Space& space, const Formula& f);

/// Semantic consequence: every world satisfying all premises satisfies the conclusion.
bool entails(const Space& space, std::span<const Formula> premises, const Formula& conclusion);

/// Compares a1 -> (a2 -> ... -> (a_{n-1} -> a_n)) with (a1 & ... & a_{n-1}) -> a_n
/// where `antecedents` holds a1..a_{n-1} and `target` is a_n.
bool import_export_check(const Space& space, std::span<const Formula> antecedents,
                         const Formula& target);

/// Right-nested implication chain a1 -> (a2 -> ... -> target).
Formula nested_implication(std::span<const Formula> antecedents, const Formula& target);
/// Left-to-right conjunction; `true` for an empty list.
Formula conjunction(std::span<const Formula> fs);
/// Left-to-right disjunction; `false` for an empty list.
Formula disjunction(std::span<const Formula> fs);

/// Equivalent formula built only from Nand nodes, atoms and constants.
Formula compile_nand(const Formula& f);
/// True when the tree contains no connective other than Nand (and no Not).
bool is_nand_only(const Formula& f);

struct SetClassification {
  bool mutually_exclusive;
  bool exhaustive;
};

SetClassification classify_set(const Space& space, std::span<const Formula> fs);

/// One of the sixteen binary truth functions of two propositions.
struct BinaryOperator {
  std::string_view name;    // ASCII name, e.g. "nand"
  std::string_view symbol;  // display form, e.g. "a !& b"
  std::function<Formula(const Formula&, const Formula&)> build;
};

/// The sixteen operators, in the customary tabulation order:
/// true, false, id_a, id_b, not_a, not_b, and, or, nand, nor, xor, iff,
/// implies, implied_by, not_implies, not_implied_by.
const std::vector<BinaryOperator>& binary_operators();

/// Evaluates a formula schema whose atom variables index into `bindings`,
/// each binding being the truth table (bit w = value at world w) of a
/// proposition over a space of at most 64 worlds. Atom values are ignored.
/// `world_mask` selects the valid bits.
std::uint64_t evaluate_schema(const Formula& schema, std::span<const std::uint64_t> bindings,
                              std::uint64_t world_mask);

}  // namespace inferkit
