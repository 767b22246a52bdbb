#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// Formulas in one context ordered by material implication: f precedes g
/// when (context & f) -> g is a tautology. Logically equivalent formulas
/// (under the context) share a node, which makes the order antisymmetric.
struct OrderedSet {
  std::vector<Formula> elements;
  Formula context = Formula::truth();

  /// node_of[e] is the node holding element e.
  std::vector<std::size_t> node_of;
  /// Element indices per node; the first one labels the node.
  std::vector<std::vector<std::size_t>> nodes;
  /// relation[i][j]: node i precedes node j. Reflexive and transitive.
  std::vector<std::vector<bool>> relation;
  /// Transitive reduction as (lower, upper) node pairs, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> cover_edges;
  /// Longest cover-path length from a minimal node.
  std::vector<std::size_t> levels;

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t level_count() const;
  bool precedes(std::size_t element_i, std::size_t element_j) const {
    return relation[node_of[element_i]][node_of[element_j]];
  }
};

/// Builds the order over `fs` under `context`. With `include_bounds`, false
/// is prepended and true appended as the universal lower and upper bounds.
OrderedSet build_order(const Space& space, const std::vector<Formula>& fs,
                       const Formula& context = Formula::truth(), bool include_bounds = false);

/// Reflexive-transitive closure of a set of edges over `node_count` nodes.
std::vector<std::vector<bool>> transitive_closure(
    std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Greatest lower / least upper bound of two nodes, if one exists.
std::optional<std::size_t> greatest_lower_bound(const OrderedSet& order, std::size_t i, std::size_t j);
std::optional<std::size_t> least_upper_bound(const OrderedSet& order, std::size_t i, std::size_t j);

/// Checks that disjunction preserves order: (a <= b) implies (a|c <= b|c),
/// for pairwise mutually exclusive a, b, c under the context. The pair
/// (a, b) may instead be equivalent, which is the reflexive case.
bool order_preservation_check(const Space& space, const Formula& a, const Formula& b,
                              const Formula& c, const Formula& context = Formula::truth());

/// Graphviz digraph of the cover edges, pointing upward, with one
/// `rank=same` group per level.
std::string export_dot(const OrderedSet& order, const Space& space);

}  // namespace inferkit
