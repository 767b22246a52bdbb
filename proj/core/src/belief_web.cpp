#include "inferkit/belief_web.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"

namespace inferkit {

namespace {

double mass(const BeliefWeb& w, const WorldSet& s) {
  double total = 0.0;
  s.for_each([&](std::uint64_t world) { total += w.weight(world); });
  return total;
}

WorldSet context_set(const BeliefWeb& w, const Formula& context) {
  WorldSet s = models(w.space(), context);
  if (s.empty()) {
    throw Error(ErrorKind::contradiction_context,
                "context " + to_string(context, w.space()) + " is a contradiction");
  }
  return s;
}

double conditional(const BeliefWeb& w, const Formula& a, const WorldSet& ctx,
                   const Formula& context) {
  const double denom = mass(w, ctx);
  if (denom <= 0.0) {
    throw Error(ErrorKind::conditioning,
                "context " + to_string(context, w.space()) + " has zero probability");
  }
  WorldSet joint = models(w.space(), a);
  joint &= ctx;
  return std::min(mass(w, joint) / denom, 1.0);
}

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::domain, std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

BeliefWeb::BeliefWeb(Space space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  space_.require_enumerable();
  if (weights_.size() != space_.world_count()) {
    throw Error(ErrorKind::structural, "expected " + std::to_string(space_.world_count()) +
                                           " weights, got " + std::to_string(weights_.size()));
  }
  double total = 0.0;
  for (double p : weights_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::domain, "probabilities must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorKind::domain, "probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

BeliefWeb BeliefWeb::uniform(Space space) {
  space.require_enumerable();
  const auto n = space.world_count();
  return BeliefWeb(std::move(space), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

BeliefWeb BeliefWeb::normalized(Space space, std::vector<double> raw) {
  double total = 0.0;
  for (double p : raw) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::domain, "weights must be finite and nonnegative");
    }
    total += p;
  }
  if (total <= 0.0) throw Error(ErrorKind::domain, "weights sum to zero");
  for (double& p : raw) p /= total;
  return BeliefWeb(std::move(space), std::move(raw));
}

BeliefWeb product_web(const BeliefWeb& a, const BeliefWeb& b) {
  Space joint = product_space(a.space(), b.space());
  std::vector<double> weights;
  weights.reserve(a.world_count() * b.world_count());
  for (double pa : a.weights()) {
    for (double pb : b.weights()) weights.push_back(pa * pb);
  }
  return BeliefWeb::normalized(std::move(joint), std::move(weights));
}

double probability(const BeliefWeb& w, const Formula& f) {
  // Rounding in the sum may overshoot 1 by an ulp.
  return std::min(mass(w, models(w.space(), f)), 1.0);
}

double conditional_probability(const BeliefWeb& w, const Statement& s) {
  return conditional_probability(w, s.consequent(), s.context());
}

double conditional_probability(const BeliefWeb& w, const Formula& a, const Formula& context) {
  return conditional(w, a, context_set(w, context), context);
}

double check_sum_rule(const BeliefWeb& w, const Formula& a, const Formula& b, const Formula& context) {
  const WorldSet ctx = context_set(w, context);
  const double lhs = conditional(w, a | b, ctx, context);
  const double rhs = conditional(w, a, ctx, context) + conditional(w, b, ctx, context) -
                     conditional(w, a & b, ctx, context);
  return std::abs(lhs - rhs);
}

double check_product_rule(const BeliefWeb& w, const Formula& a, const Formula& b,
                          const Formula& context) {
  const WorldSet ctx = context_set(w, context);
  // An unsatisfiable G&a is a zero-mass context here, not a malformed statement.
  WorldSet ctx_a = models(w.space(), a);
  ctx_a &= ctx;
  const double lhs = conditional(w, a & b, ctx, context);
  const double rhs = conditional(w, a, ctx, context) * conditional(w, b, ctx_a, context & a);
  return std::abs(lhs - rhs);
}

double negation_rule(const BeliefWeb& w, const Formula& a, const Formula& context) {
  const WorldSet ctx = context_set(w, context);
  const double neg = conditional(w, !a, ctx, context);
  const double pos = conditional(w, a, ctx, context);
  if (std::abs(neg + pos - 1.0) > 1e-12) {
    throw Error(ErrorKind::domain, "negation rule violated beyond 1e-12");
  }
  return neg;
}

BeliefWeb marginalize(const BeliefWeb& w, const BlockIndex& keep) {
  if (keep.empty()) throw Error(ErrorKind::structural, "marginalization needs at least one variable");
  Space sub = w.space().subspace(keep);
  std::vector<double> weights(sub.world_count(), 0.0);
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    weights[w.space().project(x, keep)] += w.weight(x);
  }
  return BeliefWeb::normalized(std::move(sub), std::move(weights));
}

double expected_value(const BeliefWeb& w, const std::function<double(const World&)>& f) {
  double total = 0.0;
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    total += f(w.space().world_at(x)) * w.weight(x);
  }
  return total;
}

double expected_value(const BeliefWeb& w, std::span<const double> values) {
  if (values.size() != w.world_count()) {
    throw Error(ErrorKind::structural, "expected one value per world");
  }
  return std::inner_product(values.begin(), values.end(), w.weights().begin(), 0.0);
}

BeliefWeb bayes_condition(const BeliefWeb& w, const BlockIndex& data_block,
                          std::span<const std::size_t> observed) {
  const Space& space = w.space();
  space.validate(data_block);
  if (observed.size() != data_block.size()) {
    throw Error(ErrorKind::structural, "observation size does not match the data block");
  }
  std::uint64_t target = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] >= space.domain_size(data_block[i])) {
      throw Error(ErrorKind::structural, "observed value out of range for variable " +
                                             space.variable(data_block[i]).name);
    }
    target = target * space.domain_size(data_block[i]) + observed[i];
  }

  std::vector<double> posterior(w.world_count(), 0.0);
  double evidence = 0.0;
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    if (space.project(x, data_block) == target) {
      posterior[x] = w.weight(x);
      evidence += w.weight(x);
    }
  }
  if (evidence <= 0.0) throw Error(ErrorKind::zero_evidence, "observed data has zero prior mass");
  for (double& p : posterior) p /= evidence;
  return BeliefWeb(space, std::move(posterior));
}

DoubleSlitResult double_slit_demo(double p_alpha, double p_beta, double p_x_given_alpha,
                                  double p_x_given_beta,
                                  const std::optional<SingleSlitConditionals>& single) {
  require_unit(p_alpha, "p_alpha");
  require_unit(p_beta, "p_beta");
  require_unit(p_x_given_alpha, "p(x|alpha)");
  require_unit(p_x_given_beta, "p(x|beta)");
  if (std::abs(p_alpha + p_beta - 1.0) > 1e-12) {
    throw Error(ErrorKind::domain, "p_alpha + p_beta must equal 1");
  }
  const SingleSlitConditionals s =
      single.value_or(SingleSlitConditionals{1.0, p_x_given_alpha, 1.0, p_x_given_beta});
  require_unit(s.p_alpha_given_a_only, "p(alpha|a only)");
  require_unit(s.p_x_given_a_only_alpha, "p(x|a only, alpha)");
  require_unit(s.p_beta_given_b_only, "p(beta|b only)");
  require_unit(s.p_x_given_b_only_beta, "p(x|b only, beta)");

  DoubleSlitResult r{};
  r.consistent = p_alpha * p_x_given_alpha + p_beta * p_x_given_beta;
  r.naive = s.p_alpha_given_a_only * s.p_x_given_a_only_alpha +
            s.p_beta_given_b_only * s.p_x_given_b_only_beta;

  // Joint web over the path taken and the detection outcome, both slits open.
  Space space({{"slit", {"alpha", "beta"}}, {"detect", {"x", "not_x"}}});
  const BeliefWeb web(space, {p_alpha * p_x_given_alpha, p_alpha * (1.0 - p_x_given_alpha),
                              p_beta * p_x_given_beta, p_beta * (1.0 - p_x_given_beta)});
  const Formula alpha = Formula::atom(0, 0);
  const Formula beta = Formula::atom(0, 1);
  const Formula x = Formula::atom(1, 0);
  double expansion = 0.0;
  for (const Formula& path : {alpha, beta}) {
    const double p_path = probability(web, path);
    if (p_path > 0.0) expansion += p_path * conditional_probability(web, x, path);
  }
  const double p_x = probability(web, x);
  r.total_probability_residual =
      std::max(std::abs(p_x - expansion), std::abs(p_x - r.consistent));
  r.disagrees = std::abs(r.naive - r.consistent) > 1e-12;
  return r;
}

}  // namespace inferkit
