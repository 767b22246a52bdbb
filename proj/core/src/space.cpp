#include "inferkit/space.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "inferkit/error.hpp"

namespace inferkit {

bool BlockIndex::contains(std::size_t variable) const noexcept {
  return std::find(indices_.begin(), indices_.end(), variable) != indices_.end();
}

Space::Space(std::vector<Variable> variables) : variables_(std::move(variables)) {
  if (variables_.empty()) {
    throw Error(ErrorKind::structural, "space must declare at least one variable");
  }
  std::set<std::string> names;
  for (const auto& v : variables_) {
    if (v.name.empty()) throw Error(ErrorKind::structural, "variable with empty name");
    if (!names.insert(v.name).second) {
      throw Error(ErrorKind::structural, "duplicate variable '" + v.name + "'");
    }
    if (v.domain.size() < 2) {
      throw Error(ErrorKind::structural,
                  "variable '" + v.name + "' needs at least two domain values");
    }
    std::set<std::string> labels(v.domain.begin(), v.domain.end());
    if (labels.size() != v.domain.size()) {
      throw Error(ErrorKind::structural, "duplicate domain label in variable '" + v.name + "'");
    }
  }

  strides_.assign(variables_.size(), 1);
  constexpr auto limit = std::numeric_limits<std::uint64_t>::max() / 2;
  for (std::size_t i = variables_.size(); i-- > 0;) {
    strides_[i] = world_count_;
    const std::uint64_t d = variables_[i].domain.size();
    if (world_count_ > limit / d) {
      throw Error(ErrorKind::capacity, "space is too large to index");
    }
    world_count_ *= d;
  }
}

Space Space::binary(const std::vector<std::string>& names) {
  std::vector<Variable> vars;
  vars.reserve(names.size());
  for (const auto& n : names) vars.push_back({n, {"T", "F"}});
  return Space(std::move(vars));
}

std::optional<std::size_t> Space::find_variable(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Space::find_value(std::size_t variable,
                                             std::string_view label) const noexcept {
  if (variable >= variables_.size()) return std::nullopt;
  const auto& dom = variables_[variable].domain;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (dom[i] == label) return i;
  }
  return std::nullopt;
}

bool Space::is_binary(std::size_t variable) const {
  const auto& dom = variables_.at(variable).domain;
  return dom.size() == 2 && dom[0] == "T" && dom[1] == "F";
}

void Space::require_enumerable() const {
  if (world_count_ > kMaxEnumerableWorlds) {
    throw Error(ErrorKind::capacity, "space has " + std::to_string(world_count_) +
                                         " worlds; the exhaustive limit is 2^24");
  }
}

std::size_t Space::value_at(std::uint64_t world_index, std::size_t variable) const {
  return static_cast<std::size_t>((world_index / strides_.at(variable)) %
                                  variables_[variable].domain.size());
}

World Space::world_at(std::uint64_t index) const {
  if (index >= world_count_) throw Error(ErrorKind::structural, "world index out of range");
  World w;
  w.values.resize(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) w.values[i] = value_at(index, i);
  return w;
}

std::uint64_t Space::index_of(const World& world) const {
  if (world.values.size() != variables_.size()) {
    throw Error(ErrorKind::structural, "world does not assign every variable exactly once");
  }
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (world.values[i] >= variables_[i].domain.size()) {
      throw Error(ErrorKind::structural, "world assigns a value outside the domain of '" +
                                             variables_[i].name + "'");
    }
    index += world.values[i] * strides_[i];
  }
  return index;
}

void Space::validate(const BlockIndex& block) const {
  std::set<std::size_t> seen;
  for (auto i : block.indices()) {
    if (i >= variables_.size()) throw Error(ErrorKind::structural, "block index out of range");
    if (!seen.insert(i).second) throw Error(ErrorKind::structural, "repeated block index");
  }
}

Space Space::subspace(const BlockIndex& block) const {
  validate(block);
  std::vector<Variable> vars;
  vars.reserve(block.size());
  for (auto i : block.indices()) vars.push_back(variables_[i]);
  return Space(std::move(vars));
}

std::uint64_t Space::project(std::uint64_t world_index, const BlockIndex& block) const {
  std::uint64_t index = 0;
  for (auto i : block.indices()) {
    index = index * variables_[i].domain.size() + value_at(world_index, i);
  }
  return index;
}

std::string Space::describe(std::uint64_t world_index) const {
  std::string out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) out += ',';
    out += variables_[i].name;
    out += '=';
    out += variables_[i].domain[value_at(world_index, i)];
  }
  return out;
}

Space product_space(const Space& first, const Space& second) {
  auto vars = first.variables();
  vars.insert(vars.end(), second.variables().begin(), second.variables().end());
  return Space(std::move(vars));
}

}  // namespace inferkit
