#include "inferkit/maxent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"

namespace inferkit {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Per-world constraint function and target of an expectation or mass constraint.
struct Row {
  std::vector<double> values;
  double target;
  std::string label;
};

Row row_of(const Space& space, const Constraint& c, std::size_t index) {
  const std::string label = "constraint " + std::to_string(index + 1);
  if (const auto* e = std::get_if<ExpectationConstraint>(&c)) {
    if (e->values.size() != space.world_count()) {
      throw Error(ErrorKind::structural, label + ": expected one value per world");
    }
    if (!std::isfinite(e->target)) throw Error(ErrorKind::domain, label + ": target is not finite");
    for (double v : e->values) {
      if (!std::isfinite(v)) throw Error(ErrorKind::domain, label + ": function value is not finite");
    }
    return {e->values, e->target, label};
  }
  const auto& m = std::get<MassConstraint>(c);
  if (!(m.target >= 0.0 && m.target <= 1.0)) {
    throw Error(ErrorKind::domain, label + ": mass target must lie in [0, 1]");
  }
  std::vector<double> indicator(space.world_count(), 0.0);
  models(space, m.domain).for_each([&](std::uint64_t x) { indicator[x] = 1.0; });
  return {std::move(indicator), m.target, label + " (mass of " + to_string(m.domain, space) + ")"};
}

std::uint64_t observed_index(const Space& space, const DataConstraint& d) {
  space.validate(d.block);
  if (d.observed.size() != d.block.size()) {
    throw Error(ErrorKind::structural, "data constraint: observation size does not match its block");
  }
  std::uint64_t target = 0;
  for (std::size_t i = 0; i < d.observed.size(); ++i) {
    if (d.observed[i] >= space.domain_size(d.block[i])) {
      throw Error(ErrorKind::structural,
                  "data constraint: value out of range for " + space.variable(d.block[i]).name);
    }
    target = target * space.domain_size(d.block[i]) + d.observed[i];
  }
  return target;
}

// p(x, theta) = delta(x, x') q(theta | x), with q(theta | x') = q(x', theta) / q(x').
// Returns nullopt when the observation has zero prior mass.
std::optional<BeliefWeb> apply_data(const BeliefWeb& prior, const DataConstraint& d) {
  const Space& space = prior.space();
  const std::uint64_t target = observed_index(space, d);
  const BeliefWeb marginal = marginalize(prior, d.block);
  const double evidence = marginal.weight(target);
  if (!(evidence > 0.0)) return std::nullopt;
  std::vector<double> posterior(prior.world_count(), 0.0);
  for (std::uint64_t x = 0; x < prior.world_count(); ++x) {
    if (space.project(x, d.block) == target) posterior[x] = prior.weight(x) / evidence;
  }
  return BeliefWeb::normalized(space, std::move(posterior));
}

void check_disjoint_blocks(const Space& space, const ConstraintSet& constraints) {
  std::vector<bool> seen(space.variable_count(), false);
  for (const auto& c : constraints) {
    const auto* d = std::get_if<DataConstraint>(&c);
    if (!d) continue;
    space.validate(d->block);
    for (auto v : d->block.indices()) {
      if (seen[v]) {
        throw Error(ErrorKind::structural,
                    "variable " + space.variable(v).name + " appears in more than one data constraint");
      }
      seen[v] = true;
    }
  }
}

struct Conditioned {
  std::optional<BeliefWeb> web;  // nullopt: some observation had zero mass
  std::string failure;
};

Conditioned condition_on_data(const BeliefWeb& prior, const ConstraintSet& constraints) {
  Conditioned out{prior, {}};
  for (const auto& c : constraints) {
    const auto* d = std::get_if<DataConstraint>(&c);
    if (!d) continue;
    auto next = apply_data(*out.web, *d);
    if (!next) {
      out.web.reset();
      out.failure = "observed data has zero prior mass";
      return out;
    }
    out.web = std::move(next);
  }
  return out;
}

FeasibilityReport check_rows(const BeliefWeb& q, const Space& space, const ConstraintSet& constraints,
                             const std::vector<Row>& rows) {
  FeasibilityReport report;
  for (const auto& row : rows) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t x = 0; x < q.world_count(); ++x) {
      if (q.weight(x) <= 0.0) continue;
      lo = std::min(lo, row.values[x]);
      hi = std::max(hi, row.values[x]);
    }
    const double tol = kBoundaryTolerance * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (row.target < lo - tol || row.target > hi + tol) {
      report.feasible = false;
      report.diagnostics.push_back(row.label + ": target " + fmt_double(row.target) +
                                   " outside the attainable range [" + fmt_double(lo) + ", " +
                                   fmt_double(hi) + "]");
    } else if (hi - lo > tol && (row.target <= lo + tol || row.target >= hi - tol)) {
      report.feasible = false;
      report.diagnostics.push_back(row.label + ": target " + fmt_double(row.target) +
                                   " on the boundary of [" + fmt_double(lo) + ", " + fmt_double(hi) +
                                   "]; no interior solution (multipliers diverge)");
    }
  }

  // Mass targets over domains that partition the space must sum to 1.
  std::vector<Formula> domains;
  double total = 0.0;
  for (const auto& c : constraints) {
    if (const auto* m = std::get_if<MassConstraint>(&c)) {
      domains.push_back(m->domain);
      total += m->target;
    }
  }
  if (domains.size() >= 2) {
    const auto cls = classify_set(space, domains);
    if (cls.mutually_exclusive && cls.exhaustive && std::abs(total - 1.0) > 1e-9) {
      report.feasible = false;
      report.diagnostics.push_back("mass targets over a partition sum to " + fmt_double(total) +
                                   ", not 1");
    }
  }
  return report;
}

struct DualState {
  std::vector<double> p;  // tilted distribution on the support
  double objective;       // log sum q exp(lambda . B), B = A - t
  Eigen::VectorXd gradient;
};

// Dual objective and gradient at lambda for shifted rows B (support-restricted).
DualState evaluate_dual(const std::vector<double>& log_q, const Eigen::MatrixXd& b,
                        const Eigen::VectorXd& lambda) {
  const Eigen::Index n = b.rows();
  Eigen::VectorXd log_w(n);
  for (Eigen::Index i = 0; i < n; ++i) log_w(i) = log_q[static_cast<std::size_t>(i)] + b.row(i).dot(lambda);
  const double shift = log_w.maxCoeff();
  DualState s;
  s.p.resize(static_cast<std::size_t>(n));
  double z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = std::exp(log_w(i) - shift);
    s.p[static_cast<std::size_t>(i)] = w;
    z += w;
  }
  for (double& w : s.p) w /= z;
  s.objective = shift + std::log(z);
  s.gradient = Eigen::VectorXd::Zero(b.cols());
  for (Eigen::Index i = 0; i < n; ++i) s.gradient += s.p[static_cast<std::size_t>(i)] * b.row(i).transpose();
  return s;
}

// Hessian of the dual: covariance of B under the tilted distribution.
Eigen::MatrixXd covariance(const DualState& s, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd h = -s.gradient * s.gradient.transpose();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    h.noalias() += s.p[static_cast<std::size_t>(i)] * b.row(i).transpose() * b.row(i);
  }
  return 0.5 * (h + h.transpose());
}

Constraint lift(const Constraint& c, const Space& own, const Space& other, bool first) {
  const std::size_t offset = first ? 0 : other.variable_count();
  return std::visit(
      Overloaded{
          [&](const ExpectationConstraint& e) -> Constraint {
            const std::uint64_t n_own = own.world_count();
            const std::uint64_t n_other = other.world_count();
            std::vector<double> values(n_own * n_other);
            for (std::uint64_t x = 0; x < values.size(); ++x) {
              const std::uint64_t local = first ? x / n_other : x % n_own;
              values[x] = e.values.at(local);
            }
            return ExpectationConstraint{std::move(values), e.target};
          },
          [&](const MassConstraint& m) -> Constraint {
            return MassConstraint{shift_variables(m.domain, offset), m.target};
          },
          [&](const DataConstraint& d) -> Constraint {
            std::vector<std::size_t> block;
            for (auto v : d.block.indices()) block.push_back(v + offset);
            return DataConstraint{BlockIndex(std::move(block)), d.observed};
          },
      },
      c);
}

}  // namespace

ExpectationConstraint expectation(const Space& space, const std::function<double(const World&)>& fn,
                                  double target) {
  space.require_enumerable();
  std::vector<double> values(space.world_count());
  for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = fn(space.world_at(x));
  return {std::move(values), target};
}

double relative_entropy(const BeliefWeb& p, const BeliefWeb& q) {
  if (!(p.space() == q.space())) {
    throw Error(ErrorKind::structural, "relative entropy needs webs over the same space");
  }
  double s = 0.0;
  for (std::uint64_t x = 0; x < p.world_count(); ++x) {
    const double px = p.weight(x);
    if (px <= 0.0) continue;
    const double qx = q.weight(x);
    if (qx <= 0.0) {
      throw Error(ErrorKind::support,
                  "p > 0 where q = 0 at " + p.space().describe(x) + "; divergence is infinite");
    }
    s -= px * std::log(px / qx);
  }
  return s;
}

double kl_divergence(const BeliefWeb& p, const BeliefWeb& q) { return -relative_entropy(p, q); }

FeasibilityReport feasibility_check(const BeliefWeb& prior, const ConstraintSet& constraints) {
  const Space& space = prior.space();
  FeasibilityReport report;
  try {
    check_disjoint_blocks(space, constraints);
  } catch (const Error& e) {
    report.feasible = false;
    report.diagnostics.emplace_back(e.what());
    return report;
  }
  const Conditioned cond = condition_on_data(prior, constraints);
  if (!cond.web) {
    report.feasible = false;
    report.diagnostics.push_back(cond.failure);
    return report;
  }
  std::vector<Row> rows;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!std::holds_alternative<DataConstraint>(constraints[i])) {
      rows.push_back(row_of(space, constraints[i], i));
    }
  }
  return check_rows(*cond.web, space, constraints, rows);
}

UpdateReport update(const BeliefWeb& prior, const ConstraintSet& constraints,
                    const SolverOptions& options) {
  if (constraints.empty()) return {prior, 0.0, std::nullopt};
  const Space& space = prior.space();
  check_disjoint_blocks(space, constraints);

  const Conditioned cond = condition_on_data(prior, constraints);
  if (!cond.web) throw Error(ErrorKind::zero_evidence, cond.failure);
  const BeliefWeb& q = *cond.web;

  std::vector<Row> rows;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!std::holds_alternative<DataConstraint>(constraints[i])) {
      rows.push_back(row_of(space, constraints[i], i));
    }
  }
  if (rows.empty()) return {q, relative_entropy(q, prior), std::nullopt};

  const FeasibilityReport feasibility = check_rows(q, space, constraints, rows);
  if (!feasibility.feasible) {
    std::string msg = "constraints are infeasible";
    for (const auto& d : feasibility.diagnostics) msg += "; " + d;
    throw Error(ErrorKind::feasibility, msg);
  }

  // Restrict to the support of q; rows are shifted by their targets.
  std::vector<std::uint64_t> support;
  std::vector<double> log_q;
  for (std::uint64_t x = 0; x < q.world_count(); ++x) {
    if (q.weight(x) > 0.0) {
      support.push_back(x);
      log_q.push_back(std::log(q.weight(x)));
    }
  }
  const auto n = static_cast<Eigen::Index>(support.size());
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd b(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& row = rows[static_cast<std::size_t>(j)];
      b(i, j) = row.values[support[static_cast<std::size_t>(i)]] - row.target;
    }
  }

  DualSolution dual;
  dual.min_hessian_eigenvalue = std::numeric_limits<double>::infinity();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(k);
  DualState state = evaluate_dual(log_q, b, lambda);
  double best = state.gradient.lpNorm<Eigen::Infinity>();

  std::size_t iter = 0;
  // One extra full step after reaching the tolerance; quadratic convergence
  // takes the residual to rounding level at negligible cost.
  bool polished = false;
  while (state.gradient.lpNorm<Eigen::Infinity>() > options.tolerance || (iter > 0 && !polished)) {
    if (state.gradient.lpNorm<Eigen::Infinity>() <= options.tolerance) {
      polished = true;
      const Eigen::MatrixXd h = covariance(state, b);
      const Eigen::VectorXd step = h.ldlt().solve(-state.gradient);
      DualState next = evaluate_dual(log_q, b, lambda + step);
      if (step.allFinite() &&
          next.gradient.lpNorm<Eigen::Infinity>() < state.gradient.lpNorm<Eigen::Infinity>()) {
        lambda += step;
        state = std::move(next);
      }
      break;
    }
    if (iter >= options.max_iterations) {
      throw ConvergenceError("dual Newton solver did not converge in " +
                                 std::to_string(options.max_iterations) +
                                 " iterations; best residual " + fmt_double(best),
                             best);
    }
    ++iter;

    Eigen::MatrixXd h = covariance(state, b);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    dual.min_hessian_eigenvalue = std::min(dual.min_hessian_eigenvalue, min_eig);
    if (min_eig < 1e-12) h += 1e-12 * Eigen::MatrixXd::Identity(k, k);
    const Eigen::VectorXd step = h.ldlt().solve(-state.gradient);

    // Backtracking by halving on the dual objective.
    const double slope = state.gradient.dot(step);
    const double grad_norm = state.gradient.lpNorm<Eigen::Infinity>();
    double t = 1.0;
    DualState next = state;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      next = evaluate_dual(log_q, b, lambda + t * step);
      // Armijo decrease, or a smaller gradient once the objective is flat to rounding.
      const bool armijo = next.objective <= state.objective + 1e-4 * t * slope;
      const bool flat = next.objective <= state.objective + 1e-14 * std::max(1.0, std::abs(state.objective));
      if (armijo || (flat && next.gradient.lpNorm<Eigen::Infinity>() < grad_norm)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("line search failed; best residual " + fmt_double(best), best);
    }
    lambda += t * step;
    state = std::move(next);
    best = std::min(best, state.gradient.lpNorm<Eigen::Infinity>());
  }

  std::vector<double> weights(q.world_count(), 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) weights[support[i]] = state.p[i];
  BeliefWeb posterior(space, std::move(weights));

  dual.lambdas.assign(lambda.data(), lambda.data() + lambda.size());
  dual.iterations = iter;
  dual.residual_inf_norm = 0.0;
  for (const auto& row : rows) {
    dual.residual_inf_norm =
        std::max(dual.residual_inf_norm, std::abs(expected_value(posterior, row.values) - row.target));
  }
  double lambda_dot_t = 0.0;
  for (std::size_t j = 0; j < rows.size(); ++j) lambda_dot_t += dual.lambdas[j] * rows[j].target;
  dual.log_partition = state.objective + lambda_dot_t;
  if (iter == 0) dual.min_hessian_eigenvalue = 0.0;

  const double s = relative_entropy(posterior, prior);
  return {std::move(posterior), s, std::move(dual)};
}

BeliefWeb bayes_via_maxent(const BeliefWeb& prior, const BlockIndex& block,
                           const std::vector<std::size_t>& observed) {
  return update(prior, {DataConstraint{block, observed}}).posterior;
}

double dc1_property_trial(const BeliefWeb& prior, const Formula& domain,
                          const std::optional<Constraint>& inner, const std::optional<double>& domain_mass,
                          const SolverOptions& options) {
  const Space& space = prior.space();
  const WorldSet in = models(space, domain);
  const WorldSet out = in.complement();
  double prior_in = 0.0;
  in.for_each([&](std::uint64_t x) { prior_in += prior.weight(x); });
  const double prior_out = 1.0 - prior_in;

  ConstraintSet constraints;
  const double mass = domain_mass.value_or(prior_in);
  constraints.push_back(MassConstraint{domain, mass});
  constraints.push_back(MassConstraint{!domain, 1.0 - mass});
  if (inner) {
    std::visit(Overloaded{
                   [&](const ExpectationConstraint& e) {
                     out.for_each([&](std::uint64_t x) {
                       if (e.values.at(x) != 0.0) {
                         throw Error(ErrorKind::domain, "inner constraint is not supported inside the domain");
                       }
                     });
                   },
                   [&](const MassConstraint& m) {
                     if (!models(space, m.domain).subset_of(in)) {
                       throw Error(ErrorKind::domain, "inner constraint is not supported inside the domain");
                     }
                   },
                   [&](const DataConstraint&) {
                     throw Error(ErrorKind::domain, "inner constraint must be an expectation or mass constraint");
                   },
               },
               *inner);
    constraints.push_back(*inner);
  }

  // Nothing outside the domain to compare.
  if (out.empty() || prior_out <= 0.0) return 0.0;

  const BeliefWeb posterior = update(prior, constraints, options).posterior;
  double post_out = 0.0;
  out.for_each([&](std::uint64_t x) { post_out += posterior.weight(x); });
  if (post_out <= 0.0) return 0.0;
  double drift = 0.0;
  out.for_each([&](std::uint64_t x) {
    drift = std::max(drift, std::abs(posterior.weight(x) / post_out - prior.weight(x) / prior_out));
  });
  return drift;
}

double dc3_property_trial(const BeliefWeb& prior1, const BeliefWeb& prior2,
                          const std::optional<Constraint>& c1, const std::optional<Constraint>& c2,
                          const SolverOptions& options) {
  const BeliefWeb joint_prior = product_web(prior1, prior2);
  ConstraintSet joint;
  ConstraintSet own1;
  ConstraintSet own2;
  if (c1) {
    own1.push_back(*c1);
    joint.push_back(lift(*c1, prior1.space(), prior2.space(), true));
  }
  if (c2) {
    own2.push_back(*c2);
    joint.push_back(lift(*c2, prior2.space(), prior1.space(), false));
  }
  const BeliefWeb together = update(joint_prior, joint, options).posterior;
  const BeliefWeb separate =
      product_web(update(prior1, own1, options).posterior, update(prior2, own2, options).posterior);
  double gap = 0.0;
  for (std::uint64_t x = 0; x < together.world_count(); ++x) {
    gap = std::max(gap, std::abs(together.weight(x) - separate.weight(x)));
  }
  return gap;
}

}  // namespace inferkit
