#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "inferkit/belief_web.hpp"
#include "inferkit/formula.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// Sum over worlds of p(x) A(x) = target, with A given per world.
struct ExpectationConstraint {
  std::vector<double> values;
  double target;
};

/// P(domain) = target.
struct MassConstraint {
  Formula domain;
  double target;
};

/// The variables of `block` are known to take `observed` (domain indices).
struct DataConstraint {
  BlockIndex block;
  std::vector<std::size_t> observed;
};

using Constraint = std::variant<ExpectationConstraint, MassConstraint, DataConstraint>;

/// Normalization is always implied; these are the additional constraints.
using ConstraintSet = std::vector<Constraint>;

/// Expectation constraint on fn evaluated at every world of `space`.
ExpectationConstraint expectation(const Space& space, const std::function<double(const World&)>& fn,
                                  double target);

struct SolverOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 200;
};

struct DualSolution {
  /// One multiplier per expectation or mass constraint, in declaration order.
  std::vector<double> lambdas;
  std::size_t iterations = 0;
  double residual_inf_norm = 0.0;
  /// log of sum_x q(x) exp(sum_j lambda_j A_j(x)), q being the prior after
  /// any data constraints were applied.
  double log_partition = 0.0;
  /// Smallest eigenvalue of the Newton Hessian seen over all iterates.
  double min_hessian_eigenvalue = 0.0;
};

struct UpdateReport {
  BeliefWeb posterior;
  /// S[p, q] in nats; never positive.
  double entropy_value;
  std::optional<DualSolution> dual;
};

/// S[p, q] = -sum p log(p / q), in nats. Throws a support error when p > 0 where q = 0.
double relative_entropy(const BeliefWeb& p, const BeliefWeb& q);
/// KL(p || q) = -S[p, q].
double kl_divergence(const BeliefWeb& p, const BeliefWeb& q);

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> diagnostics;
};

/// Necessary conditions only: each expectation target strictly inside the
/// range of its function over the prior support (after data constraints),
/// data with positive evidence, and mass targets over a partition summing to 1.
FeasibilityReport feasibility_check(const BeliefWeb& prior, const ConstraintSet& constraints);

/// Maximizes S[p, prior] subject to the constraints. Data constraints are
/// applied first by conditioning; the rest are solved through the dual by
/// damped Newton, giving p(x) proportional to q(x) exp(sum_j lambda_j A_j(x)).
/// An empty set returns the prior unchanged.
UpdateReport update(const BeliefWeb& prior, const ConstraintSet& constraints,
                    const SolverOptions& options = {});

/// Bayes' rule obtained as the entropic update under a data constraint.
BeliefWeb bayes_via_maxent(const BeliefWeb& prior, const BlockIndex& block,
                           const std::vector<std::size_t>& observed);

/// Updates with P(domain) and P(!domain) fixed (to `domain_mass`, default
/// the prior's) plus an optional constraint supported inside the domain,
/// and returns max over complement worlds of |p(x|!domain) - q(x|!domain)|.
double dc1_property_trial(const BeliefWeb& prior, const Formula& domain,
                          const std::optional<Constraint>& inner = std::nullopt,
                          const std::optional<double>& domain_mass = std::nullopt,
                          const SolverOptions& options = {});

/// Updates the product of two independent priors under constraints on each
/// factor and returns the largest weight gap between the joint posterior
/// and the product of the separately updated factors. Constraints refer to
/// their own factor's space.
double dc3_property_trial(const BeliefWeb& prior1, const BeliefWeb& prior2,
                          const std::optional<Constraint>& c1 = std::nullopt,
                          const std::optional<Constraint>& c2 = std::nullopt,
                          const SolverOptions& options = {});

}  // namespace inferkit
