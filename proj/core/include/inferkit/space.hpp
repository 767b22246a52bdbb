#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace inferkit {

/// Exhaustive operations (truth tables, world sets, belief webs) refuse
/// spaces with more worlds than this.
inline constexpr std::uint64_t kMaxEnumerableWorlds = std::uint64_t{1} << 24;

struct Variable {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const Variable&) const = default;
};

/// A total assignment: `values[i]` is the domain index of variable i.
struct World {
  std::vector<std::size_t> values;

  bool operator==(const World&) const = default;
};

/// Ordered subset of a space's variables, e.g. a marginalization target.
class BlockIndex {
 public:
  BlockIndex() = default;
  BlockIndex(std::initializer_list<std::size_t> indices) : indices_(indices) {}
  explicit BlockIndex(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  bool contains(std::size_t variable) const noexcept;

  bool operator==(const BlockIndex&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Finite set of named variables with finite ordered domains. Worlds are
/// enumerated lexicographically: the first declared variable is the most
/// significant digit, domain order within each variable.
class Space {
 public:
  explicit Space(std::vector<Variable> variables);

  /// Variables with domain {T, F}, in that order.
  static Space binary(const std::vector<std::string>& names);

  std::size_t variable_count() const noexcept { return variables_.size(); }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const Variable& variable(std::size_t index) const { return variables_.at(index); }
  std::size_t domain_size(std::size_t index) const { return variables_.at(index).domain.size(); }

  std::optional<std::size_t> find_variable(std::string_view name) const noexcept;
  std::optional<std::size_t> find_value(std::size_t variable, std::string_view label) const noexcept;

  /// True when the variable's domain is exactly {T, F}.
  bool is_binary(std::size_t variable) const;

  std::uint64_t world_count() const noexcept { return world_count_; }
  /// Throws a capacity error if the space has more than kMaxEnumerableWorlds worlds.
  void require_enumerable() const;

  std::uint64_t stride(std::size_t variable) const { return strides_.at(variable); }
  std::size_t value_at(std::uint64_t world_index, std::size_t variable) const;
  World world_at(std::uint64_t index) const;
  std::uint64_t index_of(const World& world) const;

  /// Space over the block's variables, in block order.
  Space subspace(const BlockIndex& block) const;
  /// Index of the world of `subspace(block)` that `world_index` projects to.
  std::uint64_t project(std::uint64_t world_index, const BlockIndex& block) const;
  void validate(const BlockIndex& block) const;

  /// "name=label,name=label" rendering of a world.
  std::string describe(std::uint64_t world_index) const;

  bool operator==(const Space& other) const { return variables_ == other.variables_; }

 private:
  std::vector<Variable> variables_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t world_count_ = 1;
};

/// Concatenation of two spaces with disjoint variable names.
Space product_space(const Space& first, const Space& second);

}  // namespace inferkit
