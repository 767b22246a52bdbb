#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "inferkit/correlation.hpp"
#include "inferkit/error.hpp"

namespace inferkit {
namespace {

using testing::Rng;

const double kLog2 = std::log(2.0);

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::io;
}

// Straight summation of p log(p / prod of block marginals), with marginals
// tallied world by world.
double brute_force_tc(const BeliefWeb& w, const Split& split) {
  const Space& s = w.space();
  std::vector<std::vector<double>> marginals;
  for (const auto& block : split.blocks) {
    std::vector<double> m(s.subspace(block).world_count(), 0.0);
    for (std::uint64_t x = 0; x < s.world_count(); ++x) m[s.project(x, block)] += w.weight(x);
    marginals.push_back(std::move(m));
  }
  double tc = 0.0;
  for (std::uint64_t x = 0; x < s.world_count(); ++x) {
    const double p = w.weight(x);
    if (p == 0.0) continue;
    double prod = 1.0;
    for (std::size_t b = 0; b < split.blocks.size(); ++b) prod *= marginals[b][s.project(x, split.blocks[b])];
    tc += p * std::log(p / prod);
  }
  return tc;
}

double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

Split two_blocks(const Space& s, std::size_t cut) {
  std::vector<std::size_t> a(cut);
  std::vector<std::size_t> b(s.variable_count() - cut);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), cut);
  return Split{{BlockIndex(a), BlockIndex(b)}};
}

TEST(Entropy, Examples) {
  const Space two = Space::binary({"a", "b"});
  EXPECT_EQ(shannon_entropy(BeliefWeb(two, {0, 0, 1, 0})), 0.0);
  EXPECT_NEAR(shannon_entropy(BeliefWeb::uniform(two)), std::log(4.0), 1e-15);
  const Space three({{"x", {"1", "2", "3"}}});
  const double h = shannon_entropy(BeliefWeb(three, {0.5, 0.25, 0.25}));
  EXPECT_NEAR(h, 1.5 * kLog2, 1e-15);
  EXPECT_NEAR(h, 1.0397207708399179, 1e-15);
  EXPECT_NEAR(to_bits(h), 1.5, 1e-15);
}

TEST(Entropy, Bounds) {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Space s = testing::random_space(rng, 3, 4, 64);
    const BeliefWeb w = testing::random_web(rng, s, 0.3);
    const double h = shannon_entropy(w);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(double(s.world_count())) + 1e-12);
  }
}

TEST(TotalCorrelation, Examples) {
  const Space bits = Space::binary({"x", "y", "z"});
  const BeliefWeb copies(bits, {0.5, 0, 0, 0, 0, 0, 0, 0.5});
  EXPECT_NEAR(total_correlation(copies), 2 * kLog2, 1e-12);
  EXPECT_NEAR(total_correlation_entropy_form(copies, unit_split(bits)), 2 * kLog2, 1e-12);

  Rng rng(62);
  const BeliefWeb a = testing::random_web(rng, Space::binary({"x"}));
  const BeliefWeb b = testing::random_web(rng, Space::binary({"y", "z"}));
  EXPECT_NEAR(total_correlation(product_web(a, b), two_blocks(bits, 1)), 0.0, 1e-15);
}

TEST(TotalCorrelation, MatchesBruteForceAndEntropyForm) {
  Rng rng(63);
  for (int trial = 0; trial < 300; ++trial) {
    const Space s = testing::random_space(rng, 4, 3, 81);
    if (s.variable_count() < 2) continue;
    const BeliefWeb w = testing::random_web(rng, s, trial % 3 == 0 ? 0.3 : 0.0);
    const Split unit = unit_split(s);
    const double tc = total_correlation(w, unit);
    EXPECT_NEAR(tc, brute_force_tc(w, unit), 1e-12);
    EXPECT_NEAR(tc, total_correlation_entropy_form(w, unit), 1e-10);
    EXPECT_GE(tc, 0.0);
    EXPECT_EQ(npi(w, unit), tc);
    EXPECT_EQ(total_correlation(w), tc);
  }
}

TEST(MutualInformation, Examples) {
  const Space xy = Space::binary({"x", "y"});
  const Split split = unit_split(xy);
  EXPECT_NEAR(mutual_information(BeliefWeb(xy, {0.5, 0, 0, 0.5}), split), kLog2, 1e-12);
  EXPECT_NEAR(mutual_information(BeliefWeb::uniform(xy), split), 0.0, 1e-15);
  const double noisy = mutual_information(BeliefWeb(xy, {0.45, 0.05, 0.05, 0.45}), split);
  EXPECT_NEAR(noisy, kLog2 - binary_entropy(0.1), 1e-12);
  EXPECT_NEAR(noisy, 0.3680642071684971, 1e-12);
}

TEST(MutualInformation, SymmetricAndEqualToNpi) {
  Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const Space s = testing::random_space(rng, 4, 3, 81);
    if (s.variable_count() < 2) continue;
    const BeliefWeb w = testing::random_web(rng, s, 0.2);
    const Split split = two_blocks(s, 1 + testing::uniform_index(rng, s.variable_count() - 1));
    const Split swapped{{split.blocks[1], split.blocks[0]}};
    EXPECT_EQ(mutual_information(w, split), mutual_information(w, swapped));
    EXPECT_EQ(mutual_information(w, split), npi(w, split));
  }
}

TEST(MutualInformation, NeedsTwoBlocks) {
  const Space s = Space::binary({"x", "y", "z"});
  EXPECT_EQ(kind_of([&] { mutual_information(BeliefWeb::uniform(s), unit_split(s)); }), ErrorKind::block_count);
}

TEST(Npi, CoarseningNeverIncreases) {
  Rng rng(65);
  const Space s = Space::binary({"a", "b", "c", "d"});
  const Split pairs = parse_split(s, "a,b|c,d");
  const Split halves = parse_split(s, "a|b,c,d");
  for (int trial = 0; trial < 300; ++trial) {
    const BeliefWeb w = testing::random_web(rng, s, 0.2);
    const double unit = npi(w, unit_split(s));
    EXPECT_LE(npi(w, pairs), unit + 1e-12);
    EXPECT_LE(npi(w, halves), unit + 1e-12);
  }
}

TEST(Npi, ZeroExactlyForProducts) {
  Rng rng(66);
  const Space s = Space::binary({"a", "b", "c"});
  for (int trial = 0; trial < 100; ++trial) {
    const BeliefWeb a = testing::random_web(rng, Space::binary({"a"}));
    const BeliefWeb bc = testing::random_web(rng, Space::binary({"b", "c"}));
    const BeliefWeb prod = product_web(a, bc);
    EXPECT_LE(npi(prod, two_blocks(s, 1)), 1e-10);
    // A correlated web has strictly positive information.
    const BeliefWeb w = testing::random_web(rng, s);
    EXPECT_GT(npi(w, two_blocks(s, 1)), 0.0);
  }
}

TEST(Split, ParseAndValidate) {
  const Space s = Space::binary({"x1", "x2", "x3", "x4"});
  const Split split = parse_split(s, "x1|x2,x3|x4");
  ASSERT_EQ(split.blocks.size(), 3u);
  EXPECT_EQ(split.blocks[1], BlockIndex({1, 2}));
  EXPECT_EQ(kind_of([&] { parse_split(s, "x1|x2,x3"); }), ErrorKind::structural);
  EXPECT_EQ(kind_of([&] { parse_split(s, "x1,x2,x3,x4"); }), ErrorKind::structural);
  EXPECT_EQ(kind_of([&] { parse_split(s, "x1|x1,x2,x3,x4"); }), ErrorKind::structural);
  EXPECT_EQ(kind_of([&] { parse_split(s, "x1|x9,x2,x3,x4"); }), ErrorKind::unknown_symbol);
  EXPECT_EQ(kind_of([&] { parse_split(s, "x1||x2,x3,x4"); }), ErrorKind::syntax);
}

TEST(SplitInvariance, IdentityAndSwaps) {
  Rng rng(67);
  const Space s({{"x", {"a", "b", "c"}}, {"y", {"T", "F"}}, {"z", {"T", "F"}}});
  const Split split = parse_split(s, "x|y,z");
  const BeliefWeb w = testing::random_web(rng, s);
  EXPECT_EQ(split_invariance_check(w, split, {{0, 1, 2}, {0, 1, 2, 3}}), 0.0);
  EXPECT_LE(split_invariance_check(w, split, {{1, 0, 2}, {0, 1, 2, 3}}), 1e-12);
  EXPECT_LE(split_invariance_check(w, split, {{2, 0, 1}, {3, 1, 0, 2}}), 1e-12);
  EXPECT_EQ(kind_of([&] { split_invariance_check(w, split, {{0, 0, 2}, {0, 1, 2, 3}}); }), ErrorKind::bijection);
  EXPECT_EQ(kind_of([&] { split_invariance_check(w, split, {{0, 1}, {0, 1, 2, 3}}); }), ErrorKind::bijection);
  EXPECT_EQ(kind_of([&] { split_invariance_check(w, split, {{0, 1, 2}}); }), ErrorKind::bijection);
}

TEST(SplitInvariance, RandomWithinBlockPermutations) {
  Rng rng(68);
  for (int trial = 0; trial < 300; ++trial) {
    const Space s = testing::random_space(rng, 4, 3, 81);
    if (s.variable_count() < 2) continue;
    const BeliefWeb w = testing::random_web(rng, s, 0.2);
    const Split split = two_blocks(s, 1 + testing::uniform_index(rng, s.variable_count() - 1));
    BlockRelabeling maps;
    for (const auto& block : split.blocks) {
      std::vector<std::uint64_t> perm(s.subspace(block).world_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      maps.push_back(std::move(perm));
    }
    EXPECT_LE(split_invariance_check(w, split, maps), 1e-12);
    // The relabeled web keeps every block entropy.
    const BeliefWeb moved = relabel(w, split, maps);
    EXPECT_NEAR(shannon_entropy(moved), shannon_entropy(w), 1e-12);
  }
}

TEST(SplitInvariance, FactorRelabeling) {
  const Space s = Space::binary({"x", "y"});
  const Split split = unit_split(s);
  // Flip x: TT<->FT, TF<->FF.
  const BlockRelabeling maps = factor_relabeling(s, split, {2, 3, 0, 1});
  EXPECT_EQ(maps[0], (std::vector<std::uint64_t>{1, 0}));
  EXPECT_EQ(maps[1], (std::vector<std::uint64_t>{0, 1}));
  // Swapping only TF and FT exchanges x with y.
  EXPECT_EQ(kind_of([&] { factor_relabeling(s, split, {0, 2, 1, 3}); }), ErrorKind::split_violation);
  // Flipping y only where x = T also mixes them.
  EXPECT_EQ(kind_of([&] { factor_relabeling(s, split, {1, 0, 2, 3}); }), ErrorKind::split_violation);
  EXPECT_EQ(kind_of([&] { factor_relabeling(s, split, {0, 0, 1, 3}); }), ErrorKind::bijection);

  // The conditional flip can change the information.
  const BeliefWeb w(s, {0.4, 0.3, 0.1, 0.2});
  std::vector<double> swapped = {0.3, 0.4, 0.1, 0.2};
  EXPECT_GT(std::abs(npi(w, split) - npi(BeliefWeb(s, swapped), split)), 1e-3);
}

}  // namespace
}  // namespace inferkit
