#include "inferkit/correlation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "inferkit/error.hpp"

namespace inferkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_permutation(const std::vector<std::uint64_t>& map, std::uint64_t size,
                         const std::string& what) {
  if (map.size() != size) {
    throw Error(ErrorKind::bijection, what + " must map all " + std::to_string(size) + " values");
  }
  std::vector<bool> hit(size, false);
  for (auto v : map) {
    if (v >= size || hit[v]) throw Error(ErrorKind::bijection, what + " is not a bijection");
    hit[v] = true;
  }
}

}  // namespace

void validate_split(const Space& space, const Split& split) {
  if (split.blocks.size() < 2) throw Error(ErrorKind::structural, "a split needs at least two blocks");
  std::vector<bool> seen(space.variable_count(), false);
  for (const auto& block : split.blocks) {
    if (block.empty()) throw Error(ErrorKind::structural, "split blocks must be non-empty");
    space.validate(block);
    for (auto v : block.indices()) {
      if (seen[v]) {
        throw Error(ErrorKind::structural,
                    "variable " + space.variable(v).name + " appears in two split blocks");
      }
      seen[v] = true;
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) {
      throw Error(ErrorKind::structural, "variable " + space.variable(v).name + " is in no split block");
    }
  }
}

Split unit_split(const Space& space) {
  Split s;
  for (std::size_t v = 0; v < space.variable_count(); ++v) s.blocks.push_back(BlockIndex{v});
  return s;
}

Split parse_split(const Space& space, std::string_view text) {
  Split split;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t bar = std::min(text.find('|', start), text.size());
    std::string_view block_text = text.substr(start, bar - start);
    std::vector<std::size_t> vars;
    std::size_t pos = 0;
    while (pos <= block_text.size()) {
      const std::size_t comma = std::min(block_text.find(',', pos), block_text.size());
      const std::string_view name = trim(block_text.substr(pos, comma - pos));
      if (name.empty()) throw Error(ErrorKind::syntax, "empty variable name in split");
      const auto v = space.find_variable(name);
      if (!v) throw Error(ErrorKind::unknown_symbol, "unknown variable '" + std::string(name) + "' in split");
      vars.push_back(*v);
      pos = comma + 1;
    }
    split.blocks.emplace_back(std::move(vars));
    start = bar + 1;
  }
  validate_split(space, split);
  return split;
}

double shannon_entropy(const BeliefWeb& w) {
  double h = 0.0;
  for (double p : w.weights()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double total_correlation(const BeliefWeb& w, const Split& split) {
  const Space& space = w.space();
  validate_split(space, split);
  std::vector<BeliefWeb> marginals;
  for (const auto& block : split.blocks) marginals.push_back(marginalize(w, block));

  double kl = 0.0;
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    const double p = w.weight(x);
    if (p <= 0.0) continue;
    double product = 1.0;
    for (std::size_t b = 0; b < split.blocks.size(); ++b) {
      product *= marginals[b].weight(space.project(x, split.blocks[b]));
    }
    kl += p * std::log(p / product);
  }
  return std::max(0.0, kl);
}

double total_correlation(const BeliefWeb& w) { return total_correlation(w, unit_split(w.space())); }

double total_correlation_entropy_form(const BeliefWeb& w, const Split& split) {
  validate_split(w.space(), split);
  double sum = 0.0;
  for (const auto& block : split.blocks) sum += shannon_entropy(marginalize(w, block));
  return sum - shannon_entropy(w);
}

double mutual_information(const BeliefWeb& w, const Split& split) {
  if (split.blocks.size() != 2) {
    throw Error(ErrorKind::block_count, "mutual information needs exactly two blocks, got " +
                                            std::to_string(split.blocks.size()));
  }
  return total_correlation(w, split);
}

double npi(const BeliefWeb& w, const Split& split) { return total_correlation(w, split); }

BeliefWeb relabel(const BeliefWeb& w, const Split& split, const BlockRelabeling& relabeling) {
  const Space& space = w.space();
  validate_split(space, split);
  if (relabeling.size() != split.blocks.size()) {
    throw Error(ErrorKind::bijection, "need one relabeling per block");
  }
  std::vector<Space> subspaces;
  for (std::size_t b = 0; b < split.blocks.size(); ++b) {
    subspaces.push_back(space.subspace(split.blocks[b]));
    require_permutation(relabeling[b], subspaces.back().world_count(),
                        "relabeling of block " + std::to_string(b + 1));
  }

  std::vector<double> weights(w.world_count(), 0.0);
  World target{std::vector<std::size_t>(space.variable_count())};
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    for (std::size_t b = 0; b < split.blocks.size(); ++b) {
      const std::uint64_t mapped = relabeling[b][space.project(x, split.blocks[b])];
      const World local = subspaces[b].world_at(mapped);
      for (std::size_t i = 0; i < split.blocks[b].size(); ++i) {
        target.values[split.blocks[b][i]] = local.values[i];
      }
    }
    weights[space.index_of(target)] = w.weight(x);
  }
  // A permutation keeps the total; renormalizing would only add rounding.
  return BeliefWeb(space, std::move(weights));
}

double split_invariance_check(const BeliefWeb& w, const Split& split,
                              const BlockRelabeling& relabeling) {
  const BeliefWeb moved = relabel(w, split, relabeling);
  return std::abs(npi(w, split) - npi(moved, split));
}

BlockRelabeling factor_relabeling(const Space& space, const Split& split,
                                  const std::vector<std::uint64_t>& world_permutation) {
  validate_split(space, split);
  require_permutation(world_permutation, space.world_count(), "world relabeling");
  BlockRelabeling out;
  for (const auto& block : split.blocks) {
    const std::uint64_t size = space.subspace(block).world_count();
    std::vector<std::uint64_t> map(size, size);  // size marks "not yet seen"
    for (std::uint64_t x = 0; x < space.world_count(); ++x) {
      const std::uint64_t from = space.project(x, block);
      const std::uint64_t to = space.project(world_permutation[x], block);
      if (map[from] == size) {
        map[from] = to;
      } else if (map[from] != to) {
        throw Error(ErrorKind::split_violation,
                    "relabeling moves values of one block depending on another block");
      }
    }
    require_permutation(map, size, "induced block relabeling");
    out.push_back(std::move(map));
  }
  return out;
}

}  // namespace inferkit
