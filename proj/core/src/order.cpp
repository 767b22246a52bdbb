#include "inferkit/order.hpp"

#include <algorithm>
#include <numeric>

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"

namespace inferkit {

std::size_t OrderedSet::level_count() const {
  if (levels.empty()) return 0;
  return *std::max_element(levels.begin(), levels.end()) + 1;
}

OrderedSet build_order(const Space& space, const std::vector<Formula>& fs, const Formula& context,
                       bool include_bounds) {
  const WorldSet ctx = models(space, context);
  if (ctx.empty()) {
    throw Error(ErrorKind::contradiction_context, "order context is a contradiction");
  }

  OrderedSet out;
  out.context = context;
  if (include_bounds) out.elements.push_back(Formula::falsity());
  out.elements.insert(out.elements.end(), fs.begin(), fs.end());
  if (include_bounds) out.elements.push_back(Formula::truth());

  // Restrict every element to the context, then merge equal restrictions.
  std::vector<WorldSet> node_sets;
  out.node_of.resize(out.elements.size());
  for (std::size_t e = 0; e < out.elements.size(); ++e) {
    WorldSet s = models(space, out.elements[e]);
    s &= ctx;
    auto it = std::find(node_sets.begin(), node_sets.end(), s);
    if (it == node_sets.end()) {
      out.node_of[e] = node_sets.size();
      node_sets.push_back(std::move(s));
      out.nodes.push_back({e});
    } else {
      const auto n = static_cast<std::size_t>(it - node_sets.begin());
      out.node_of[e] = n;
      out.nodes[n].push_back(e);
    }
  }

  const std::size_t n = node_sets.size();
  out.relation.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.relation[i][j] = node_sets[i].subset_of(node_sets[j]);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !out.relation[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) {
        if (k != i && k != j && out.relation[i][k] && out.relation[k][j]) covered = false;
      }
      if (covered) out.cover_edges.emplace_back(i, j);
    }
  }

  // Strictly larger sets sit higher, so sorting by size is a topological order.
  std::vector<std::size_t> topo(n);
  std::iota(topo.begin(), topo.end(), 0);
  std::stable_sort(topo.begin(), topo.end(), [&](std::size_t x, std::size_t y) {
    return node_sets[x].size() < node_sets[y].size();
  });
  out.levels.assign(n, 0);
  for (auto lower : topo) {
    for (const auto& [lo, hi] : out.cover_edges) {
      if (lo == lower) out.levels[hi] = std::max(out.levels[hi], out.levels[lo] + 1);
    }
  }
  return out;
}

std::vector<std::vector<bool>> transitive_closure(
    std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<bool>> reach(node_count, std::vector<bool>(node_count, false));
  for (std::size_t i = 0; i < node_count; ++i) reach[i][i] = true;
  for (const auto& [a, b] : edges) reach[a][b] = true;
  for (std::size_t k = 0; k < node_count; ++k) {
    for (std::size_t i = 0; i < node_count; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < node_count; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

std::optional<std::size_t> greatest_lower_bound(const OrderedSet& o, std::size_t i, std::size_t j) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < o.node_count(); ++k) {
    if (!o.relation[k][i] || !o.relation[k][j]) continue;
    if (!best || o.relation[*best][k]) best = k;
  }
  // The candidate must dominate every other lower bound.
  if (best) {
    for (std::size_t k = 0; k < o.node_count(); ++k) {
      if (o.relation[k][i] && o.relation[k][j] && !o.relation[k][*best]) return std::nullopt;
    }
  }
  return best;
}

std::optional<std::size_t> least_upper_bound(const OrderedSet& o, std::size_t i, std::size_t j) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < o.node_count(); ++k) {
    if (!o.relation[i][k] || !o.relation[j][k]) continue;
    if (!best || o.relation[k][*best]) best = k;
  }
  if (best) {
    for (std::size_t k = 0; k < o.node_count(); ++k) {
      if (o.relation[i][k] && o.relation[j][k] && !o.relation[*best][k]) return std::nullopt;
    }
  }
  return best;
}

bool order_preservation_check(const Space& space, const Formula& a, const Formula& b,
                              const Formula& c, const Formula& context) {
  WorldSet ctx = models(space, context);
  if (ctx.empty()) {
    throw Error(ErrorKind::contradiction_context, "order context is a contradiction");
  }
  auto restricted = [&](const Formula& f) {
    WorldSet s = models(space, f);
    s &= ctx;
    return s;
  };
  const WorldSet sa = restricted(a);
  const WorldSet sb = restricted(b);
  const WorldSet sc = restricted(c);
  auto exclusive = [](WorldSet x, const WorldSet& y) {
    x &= y;
    return x.empty();
  };
  if (!exclusive(sa, sc) || !exclusive(sb, sc) || (sa != sb && !exclusive(sa, sb))) {
    throw Error(ErrorKind::mutual_exclusivity,
                "order preservation needs pairwise mutually exclusive propositions");
  }

  const bool premise = sa.subset_of(sb);
  WorldSet ac = sa;
  ac |= sc;
  WorldSet bc = sb;
  bc |= sc;
  return !premise || ac.subset_of(bc);
}

std::string export_dot(const OrderedSet& order, const Space& space) {
  std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t n = 0; n < order.node_count(); ++n) {
    std::string label;
    for (std::size_t m = 0; m < order.nodes[n].size(); ++m) {
      if (m) label += " == ";
      label += to_string(order.elements[order.nodes[n][m]], space);
    }
    out += "  n" + std::to_string(n) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [lo, hi] : order.cover_edges) {
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  }
  for (std::size_t level = 0; level < order.level_count(); ++level) {
    out += "  { rank=same;";
    for (std::size_t n = 0; n < order.node_count(); ++n) {
      if (order.levels[n] == level) out += " n" + std::to_string(n) + ";";
    }
    out += " }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace inferkit
