#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "inferkit/belief_web.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// Partition of a space's variables into at least two disjoint blocks.
struct Split {
  std::vector<BlockIndex> blocks;
};

/// Throws a structural error unless the blocks are disjoint, cover every
/// variable, and number at least two.
void validate_split(const Space& space, const Split& split);

/// One block per variable.
Split unit_split(const Space& space);

/// "x1|x2,x3|x4": blocks separated by '|', variables within a block by ','.
Split parse_split(const Space& space, std::string_view text);

inline double to_bits(double nats) { return nats / 0.69314718055994530942; }

/// -sum p log p, in nats.
double shannon_entropy(const BeliefWeb& w);

/// KL divergence from the joint to the product of its block marginals.
double total_correlation(const BeliefWeb& w, const Split& split);
/// Same quantity over unit blocks.
double total_correlation(const BeliefWeb& w);
/// sum_b H(block marginal) - H(joint); equals total_correlation analytically.
double total_correlation_entropy_form(const BeliefWeb& w, const Split& split);

/// Bipartite case; throws a block-count error unless the split has two blocks.
double mutual_information(const BeliefWeb& w, const Split& split);

/// n-partite information over the split's blocks.
double npi(const BeliefWeb& w, const Split& split);

/// Per block, relabeling[b][i] is the new index of block-world i of
/// `space.subspace(split.blocks[b])`.
using BlockRelabeling = std::vector<std::vector<std::uint64_t>>;

/// The web after moving the weight of each world to its relabeled world.
BeliefWeb relabel(const BeliefWeb& w, const Split& split, const BlockRelabeling& relabeling);

/// |npi before - npi after| for a within-block relabeling. Throws a
/// bijection error when some block map is not a permutation.
double split_invariance_check(const BeliefWeb& w, const Split& split,
                              const BlockRelabeling& relabeling);

/// Decomposes a permutation of whole worlds into per-block permutations.
/// Throws a split-violation error when the permutation mixes blocks, and a
/// bijection error when it is not a permutation.
BlockRelabeling factor_relabeling(const Space& space, const Split& split,
                                  const std::vector<std::uint64_t>& world_permutation);

}  // namespace inferkit
