#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"
#include "inferkit/statement.hpp"

namespace inferkit {

/// Probabilities summing to 1 within this bound are accepted as normalized.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Normalized probability assignment over the worlds of a space.
class BeliefWeb {
 public:
  /// Weights in world order; must be nonnegative and sum to 1.
  BeliefWeb(Space space, std::vector<double> weights);

  static BeliefWeb uniform(Space space);
  /// Divides nonnegative `raw` weights by their total.
  static BeliefWeb normalized(Space space, std::vector<double> raw);

  const Space& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::uint64_t world) const { return weights_.at(world); }
  std::uint64_t world_count() const noexcept { return weights_.size(); }

 private:
  Space space_;
  std::vector<double> weights_;
};

/// Independent joint of two webs over `product_space(a.space(), b.space())`.
BeliefWeb product_web(const BeliefWeb& a, const BeliefWeb& b);

double probability(const BeliefWeb& w, const Formula& f);

/// P(consequent | context). Throws a conditioning error when the context
/// has zero mass.
double conditional_probability(const BeliefWeb& w, const Statement& s);
double conditional_probability(const BeliefWeb& w, const Formula& a, const Formula& context);

/// |P(a|b G) - P(a|G) - P(b|G) + P(a&b|G)|
double check_sum_rule(const BeliefWeb& w, const Formula& a, const Formula& b,
                      const Formula& context = Formula::truth());
/// |P(a&b|G) - P(a|G) P(b|G&a)|
double check_product_rule(const BeliefWeb& w, const Formula& a, const Formula& b,
                          const Formula& context = Formula::truth());
/// P(!a|G), after checking it equals 1 - P(a|G) to 1e-12.
double negation_rule(const BeliefWeb& w, const Formula& a, const Formula& context = Formula::truth());

/// Web over `space().subspace(keep)`, summing out the other variables.
BeliefWeb marginalize(const BeliefWeb& w, const BlockIndex& keep);

double expected_value(const BeliefWeb& w, const std::function<double(const World&)>& f);
/// `values` holds one number per world, in world order.
double expected_value(const BeliefWeb& w, std::span<const double> values);

/// Joint posterior after observing `observed` (domain indices, block
/// order) on `data_block`: the prior conditional on the observation times
/// a point mass on it. Throws a zero-evidence error when the observation
/// has no prior mass.
BeliefWeb bayes_condition(const BeliefWeb& w, const BlockIndex& data_block,
                          std::span<const std::size_t> observed);

/// Single-slit conditionals used by the naive substitution: probability of
/// passing the open slit and of then reaching x, for each slit alone.
struct SingleSlitConditionals {
  double p_alpha_given_a_only = 1.0;
  double p_x_given_a_only_alpha;
  double p_beta_given_b_only = 1.0;
  double p_x_given_b_only_beta;
};

struct DoubleSlitResult {
  double consistent;  // P(x | both open) from the product rule over the two paths
  double naive;       // same expansion with the single-slit contexts substituted
  /// Largest gap between P(x) on the joint (slit, detect) web, its
  /// expansion over paths, and `consistent`.
  double total_probability_residual;
  bool disagrees;
};

/// With both slits open, compares the product-rule expansion over paths
/// alpha/beta with the substitution of single-slit conditionals. Without
/// `single`, the single-slit runs are taken to reach x with the same
/// conditionals and to pass their open slit with certainty.
DoubleSlitResult double_slit_demo(double p_alpha, double p_beta, double p_x_given_alpha,
                                  double p_x_given_beta,
                                  const std::optional<SingleSlitConditionals>& single = std::nullopt);

}  // namespace inferkit
