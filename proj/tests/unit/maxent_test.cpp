#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "generators.hpp"
#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"
#include "inferkit/maxent.hpp"
#include "inferkit/parser.hpp"

namespace inferkit {
namespace {

using testing::Rng;

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

const Space kDie({{"face", {"1", "2", "3", "4", "5", "6"}}});
const std::vector<double> kFaces = {1, 2, 3, 4, 5, 6};

// Independent route for a single mean constraint under a uniform prior: the
// tilted mean is increasing in lambda, so bisection finds it.
std::vector<double> die_oracle(double mean, double* lambda_out = nullptr) {
  auto tilted_mean = [](double lambda) {
    double z = 0.0;
    double m = 0.0;
    for (int k = 1; k <= 6; ++k) {
      z += std::exp(lambda * k);
      m += k * std::exp(lambda * k);
    }
    return m / z;
  };
  double lo = -20.0;
  double hi = 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tilted_mean(mid) < mean ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  if (lambda_out) *lambda_out = lambda;
  std::vector<double> p(6);
  double z = 0.0;
  for (int k = 0; k < 6; ++k) z += p[k] = std::exp(lambda * (k + 1));
  for (auto& x : p) x /= z;
  return p;
}

// Row of constraint-function values for each non-data constraint.
std::vector<std::vector<double>> constraint_rows(const Space& space, const ConstraintSet& cs) {
  std::vector<std::vector<double>> rows;
  for (const auto& c : cs) {
    if (const auto* e = std::get_if<ExpectationConstraint>(&c)) rows.push_back(e->values);
    if (const auto* m = std::get_if<MassConstraint>(&c)) {
      const WorldSet s = models(space, m->domain);
      std::vector<double> row(space.world_count(), 0.0);
      s.for_each([&](std::uint64_t x) { row[x] = 1.0; });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double max_constraint_residual(const BeliefWeb& p, const ConstraintSet& cs) {
  double worst = 0.0;
  std::size_t j = 0;
  const auto rows = constraint_rows(p.space(), cs);
  for (const auto& c : cs) {
    double target = 0.0;
    if (const auto* e = std::get_if<ExpectationConstraint>(&c)) target = e->target;
    else if (const auto* m = std::get_if<MassConstraint>(&c)) target = m->target;
    else continue;
    double v = 0.0;
    for (std::uint64_t x = 0; x < p.world_count(); ++x) v += rows[j][x] * p.weight(x);
    worst = std::max(worst, std::abs(v - target));
    ++j;
  }
  return worst;
}

// Random expectation targets drawn as expectations under a random web, so
// they are feasible and interior.
ConstraintSet random_feasible_constraints(Rng& rng, const BeliefWeb& witness, std::size_t count) {
  const Space& s = witness.space();
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  ConstraintSet cs;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> row(s.world_count());
    double target = 0.0;
    for (std::uint64_t x = 0; x < row.size(); ++x) {
      row[x] = val(rng);
      target += row[x] * witness.weight(x);
    }
    cs.push_back(ExpectationConstraint{row, target});
  }
  return cs;
}

TEST(RelativeEntropy, Examples) {
  const Space one = Space::binary({"a"});
  const BeliefWeb q = BeliefWeb::uniform(one);
  EXPECT_EQ(relative_entropy(q, q), 0.0);
  const BeliefWeb p(one, {1.0, 0.0});
  EXPECT_NEAR(relative_entropy(p, q), -std::log(2.0), 1e-15);
  EXPECT_NEAR(kl_divergence(p, q), std::log(2.0), 1e-15);
  EXPECT_EQ(kind_of([&] { relative_entropy(q, p); }), ErrorKind::support);
}

TEST(Update, EmptyConstraintSetReturnsPriorBitwise) {
  Rng rng(51);
  const BeliefWeb prior = testing::random_web(rng, testing::random_space(rng, 3, 4, 64), 0.2);
  const UpdateReport r = update(prior, {});
  ASSERT_EQ(r.posterior.world_count(), prior.world_count());
  for (std::uint64_t x = 0; x < prior.world_count(); ++x) EXPECT_EQ(r.posterior.weight(x), prior.weight(x));
  EXPECT_FALSE(r.dual.has_value());
  EXPECT_EQ(r.entropy_value, 0.0);
}

TEST(Update, SatisfiedConstraintLeavesPrior) {
  const BeliefWeb u = BeliefWeb::uniform(kDie);
  const UpdateReport r = update(u, {ExpectationConstraint{kFaces, 3.5}});
  ASSERT_TRUE(r.dual.has_value());
  EXPECT_NEAR(r.dual->lambdas[0], 0.0, 1e-12);
  for (std::uint64_t x = 0; x < 6; ++x) EXPECT_NEAR(r.posterior.weight(x), 1.0 / 6.0, 1e-14);
}

TEST(Update, LoadedDieMatchesBisectionOracle) {
  double lambda = 0.0;
  const std::vector<double> oracle = die_oracle(4.5, &lambda);
  const UpdateReport r = update(BeliefWeb::uniform(kDie), {ExpectationConstraint{kFaces, 4.5}});
  ASSERT_TRUE(r.dual.has_value());
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(r.posterior.weight(k), oracle[k], 1e-12);
  EXPECT_NEAR(r.dual->lambdas[0], lambda, 1e-10);
  EXPECT_LE(r.dual->iterations, 25u);
  EXPECT_LE(r.dual->residual_inf_norm, 1e-10);

  // Frozen from the oracle above.
  const std::vector<double> frozen = {0.05435316782649153, 0.07877154563305354, 0.11415997722944057,
                                      0.16544680311005336, 0.2397744404269,     0.34749406577406117};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(r.posterior.weight(k), frozen[k], 1e-12);
  EXPECT_NEAR(r.dual->lambdas[0], 0.37104893808103334, 1e-10);
}

TEST(Update, ExpectationHelperBuildsRowFromWorlds) {
  const ExpectationConstraint c =
      expectation(kDie, [](const World& w) { return double(w.values[0] + 1); }, 4.5);
  EXPECT_EQ(c.values, kFaces);
  EXPECT_EQ(c.target, 4.5);
}

TEST(Feasibility, Diagnostics) {
  const BeliefWeb u = BeliefWeb::uniform(kDie);
  EXPECT_TRUE(feasibility_check(u, {ExpectationConstraint{kFaces, 4.5}}).feasible);
  const auto above = feasibility_check(u, {ExpectationConstraint{kFaces, 7.0}});
  EXPECT_FALSE(above.feasible);
  EXPECT_FALSE(above.diagnostics.empty());
  EXPECT_FALSE(feasibility_check(u, {ExpectationConstraint{kFaces, 6.0}}).feasible);

  const Space xy = Space::binary({"x", "y"});
  const BeliefWeb w(xy, {0.5, 0.5, 0.0, 0.0});
  EXPECT_FALSE(feasibility_check(w, {DataConstraint{BlockIndex{0}, {1}}}).feasible);
  EXPECT_EQ(kind_of([&] { update(u, {ExpectationConstraint{kFaces, 7.0}}); }), ErrorKind::feasibility);
}

TEST(Update, ConvergenceErrorCarriesBestResidual) {
  SolverOptions opts;
  opts.max_iterations = 1;
  try {
    update(BeliefWeb::uniform(kDie), {ExpectationConstraint{kFaces, 5.9}}, opts);
    FAIL() << "expected a convergence error";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::convergence);
    EXPECT_GT(e.best_residual(), 0.0);
    EXPECT_TRUE(std::isfinite(e.best_residual()));
  }
}

TEST(Update, InvariantsOnRandomProblems) {
  Rng rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const Space s = testing::random_space(rng, 3, 4, 48);
    const BeliefWeb prior = testing::random_web(rng, s, trial % 4 == 0 ? 0.2 : 0.0);
    const std::size_t count = 1 + testing::uniform_index(rng, std::min<std::size_t>(3, s.world_count() - 1));
    // A witness with exactly the prior's support puts every target in the
    // relative interior of what the prior can reach.
    const BeliefWeb raw = testing::random_web(rng, s);
    std::vector<double> w(raw.weights().begin(), raw.weights().end());
    for (std::uint64_t x = 0; x < w.size(); ++x) w[x] = prior.weight(x) > 0.0 ? w[x] + 0.01 : 0.0;
    const BeliefWeb witness = BeliefWeb::normalized(s, w);
    ConstraintSet cs = random_feasible_constraints(rng, witness, count);
    if (trial % 3 == 0) {
      const Formula f = testing::random_atom(rng, s);
      const double m = probability(witness, f);
      if (m > 0.01 && m < 0.99) cs.push_back(MassConstraint{f, m});
    }
    ASSERT_TRUE(feasibility_check(prior, cs).feasible);
    const UpdateReport r = update(prior, cs);
    ASSERT_TRUE(r.dual.has_value());

    double total = 0.0;
    for (double p : r.posterior.weights()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LE(max_constraint_residual(r.posterior, cs), 1e-10);
    EXPECT_LE(r.dual->residual_inf_norm, 1e-10);
    EXPECT_GE(r.dual->min_hessian_eigenvalue, -1e-12);

    // posterior * Z = prior * exp(lambda . A) on the prior's support.
    const auto rows = constraint_rows(s, cs);
    for (std::uint64_t x = 0; x < s.world_count(); ++x) {
      if (prior.weight(x) == 0.0) {
        EXPECT_EQ(r.posterior.weight(x), 0.0);
        continue;
      }
      double exponent = 0.0;
      for (std::size_t j = 0; j < rows.size(); ++j) exponent += r.dual->lambdas[j] * rows[j][x];
      const double expected = prior.weight(x) * std::exp(exponent - r.dual->log_partition);
      EXPECT_NEAR(r.posterior.weight(x), expected, 1e-10 * std::max(1.0, expected));
    }
  }
}

TEST(Update, PosteriorMaximizesEntropyAmongFeasiblePerturbations) {
  Rng rng(53);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 60; ++trial) {
    const Space s = testing::random_space(rng, 2, 4, 16);
    if (s.world_count() < 4) continue;
    const BeliefWeb prior = testing::random_web(rng, s);
    const ConstraintSet cs = random_feasible_constraints(rng, testing::random_web(rng, s), 2);
    const UpdateReport r = update(prior, cs);
    const auto rows = constraint_rows(s, cs);

    // Directions that keep normalization and every constraint value fixed.
    const auto n = static_cast<Eigen::Index>(s.world_count());
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()) + 1, n);
    a.row(0).setOnes();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (Eigen::Index x = 0; x < n; ++x) a(static_cast<Eigen::Index>(j) + 1, x) = rows[j][static_cast<std::size_t>(x)];
    }
    const Eigen::MatrixXd kernel = a.fullPivLu().kernel();
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd dir = kernel * Eigen::VectorXd::NullaryExpr(kernel.cols(), [&] { return gauss(rng); });
      double min_p = 1.0;
      for (double p : r.posterior.weights()) min_p = std::min(min_p, p);
      dir *= 0.5 * min_p / dir.cwiseAbs().maxCoeff();
      std::vector<double> moved(static_cast<std::size_t>(n));
      for (Eigen::Index x = 0; x < n; ++x) moved[static_cast<std::size_t>(x)] = r.posterior.weight(x) + dir(x);
      const BeliefWeb other = BeliefWeb::normalized(s, moved);
      EXPECT_GE(r.entropy_value + 1e-12, relative_entropy(other, prior));
    }
  }
}

TEST(BayesViaMaxent, MatchesDirectConditioning) {
  Rng rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nt = 2 + testing::uniform_index(rng, 5);
    const std::size_t nx = 2 + testing::uniform_index(rng, 5);
    std::vector<std::string> tv(nt);
    std::vector<std::string> xv(nx);
    for (std::size_t i = 0; i < nt; ++i) tv[i] = "t" + std::to_string(i);
    for (std::size_t i = 0; i < nx; ++i) xv[i] = "x" + std::to_string(i);
    const Space s({{"theta", tv}, {"x", xv}});
    const BeliefWeb prior = testing::random_web(rng, s, trial % 2 ? 0.2 : 0.0);
    const std::vector<std::size_t> obs = {testing::uniform_index(rng, nx)};
    const BeliefWeb m = marginalize(prior, BlockIndex{1});
    if (m.weight(obs[0]) == 0.0) {
      EXPECT_EQ(kind_of([&] { bayes_via_maxent(prior, BlockIndex{1}, obs); }), ErrorKind::zero_evidence);
      continue;
    }
    const BeliefWeb a = bayes_via_maxent(prior, BlockIndex{1}, obs);
    const BeliefWeb b = bayes_condition(prior, BlockIndex{1}, obs);
    for (std::uint64_t x = 0; x < s.world_count(); ++x) EXPECT_NEAR(a.weight(x), b.weight(x), 1e-12);
  }
}

TEST(BayesViaMaxent, LimitingLikelihoods) {
  const Space s({{"theta", {"a", "b", "c"}}, {"x", {"0", "1"}}});
  // x = 0 is only possible under theta = a.
  const BeliefWeb det(s, {0.3, 0.0, 0.0, 0.4, 0.0, 0.3});
  const BeliefWeb post = marginalize(bayes_via_maxent(det, BlockIndex{1}, {0}), BlockIndex{0});
  EXPECT_EQ(post.weight(0), 1.0);
  // x independent of theta.
  const BeliefWeb flat(s, {0.1, 0.1, 0.2, 0.2, 0.2, 0.2});
  const BeliefWeb same = marginalize(bayes_via_maxent(flat, BlockIndex{1}, {1}), BlockIndex{0});
  EXPECT_NEAR(same.weight(0), 0.2, 1e-15);
  EXPECT_NEAR(same.weight(1), 0.4, 1e-15);
}

TEST(Dc1, SubdomainMassShiftKeepsComplementConditionals) {
  Rng rng(55);
  const Space s({{"x", {"1", "2", "3", "4"}}, {"y", {"T", "F"}}});
  const BeliefWeb prior = testing::random_web(rng, s);
  const Formula d = parse_formula("x=1 | x=2", s);
  EXPECT_LE(dc1_property_trial(prior, d, std::nullopt, 0.7), 1e-10);
  EXPECT_EQ(dc1_property_trial(prior, Formula::truth(), std::nullopt, 1.0), 0.0);
  const MassConstraint outside{parse_formula("x=3", s), 0.1};
  EXPECT_EQ(kind_of([&] { dc1_property_trial(prior, d, Constraint{outside}); }), ErrorKind::domain);
}

TEST(Dc1, RandomSupportedExpectations) {
  Rng rng(56);
  std::uniform_real_distribution<double> val(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Space s = testing::random_space(rng, 3, 3, 27);
    const BeliefWeb prior = testing::random_web(rng, s);
    const Formula d = testing::random_formula(rng, s, 2);
    const WorldSet in = models(s, d);
    if (in.empty() || in.full()) continue;
    // Values vanish outside the domain; the target is reachable inside it.
    std::vector<double> row(s.world_count(), 0.0);
    double lo = 1e9;
    double hi = -1e9;
    in.for_each([&](std::uint64_t x) {
      row[x] = val(rng);
      lo = std::min(lo, row[x]);
      hi = std::max(hi, row[x]);
    });
    if (hi - lo < 0.1) continue;
    const double m = 0.2 + 0.6 * std::uniform_real_distribution<double>()(rng);
    const double target = m * (lo + (hi - lo) * (0.25 + 0.5 * std::uniform_real_distribution<double>()(rng)));
    EXPECT_LE(dc1_property_trial(prior, d, Constraint{ExpectationConstraint{row, target}}, m), 1e-10);
  }
}

TEST(Dc3, IndependentSubsystems) {
  Rng rng(57);
  const Space s1({{"u", {"1", "2", "3"}}});
  const Space s2({{"v", {"1", "2", "3", "4"}}});
  const BeliefWeb p1 = testing::random_web(rng, s1);
  const BeliefWeb p2 = testing::random_web(rng, s2);
  EXPECT_EQ(dc3_property_trial(p1, p2), 0.0);

  // A constraint on the first block only leaves the second marginal alone.
  const ExpectationConstraint mean1{{1, 2, 3}, 2.6};
  EXPECT_LE(dc3_property_trial(p1, p2, Constraint{mean1}), 1e-10);
  ConstraintSet lifted;
  const BeliefWeb joint = product_web(p1, p2);
  std::vector<double> row(joint.world_count());
  for (std::uint64_t x = 0; x < row.size(); ++x) row[x] = mean1.values[x / 4];
  lifted.push_back(ExpectationConstraint{row, 2.6});
  const BeliefWeb post = update(joint, lifted).posterior;
  const BeliefWeb m2 = marginalize(post, BlockIndex{1});
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_NEAR(m2.weight(x), p2.weight(x), 1e-12);
}

TEST(Dc3, RandomIndependentMeans) {
  Rng rng(58);
  for (int trial = 0; trial < 100; ++trial) {
    const Space s1 = testing::random_space(rng, 2, 3, 9);
    Space s2 = testing::random_space(rng, 2, 3, 9);
    std::vector<Variable> renamed = s2.variables();
    for (auto& v : renamed) v.name = "w" + v.name;
    s2 = Space(renamed);
    const BeliefWeb p1 = testing::random_web(rng, s1);
    const BeliefWeb p2 = testing::random_web(rng, s2);
    const ConstraintSet c1 = random_feasible_constraints(rng, testing::random_web(rng, s1), 1);
    const ConstraintSet c2 = random_feasible_constraints(rng, testing::random_web(rng, s2), 1);
    EXPECT_LE(dc3_property_trial(p1, p2, c1[0], c2[0]), 1e-10);
  }
}

TEST(Dc3, MassAndDataConstraintsLift) {
  const Space s1 = Space::binary({"a", "b"});
  const Space s2 = Space::binary({"c"});
  Rng rng(59);
  const BeliefWeb p1 = testing::random_web(rng, s1);
  const BeliefWeb p2 = testing::random_web(rng, s2);
  const Constraint mass{MassConstraint{parse_formula("a | b", s1), 0.9}};
  const Constraint data{DataConstraint{BlockIndex{0}, {1}}};
  EXPECT_LE(dc3_property_trial(p1, p2, mass, data), 1e-10);
}

}  // namespace
}  // namespace inferkit
