#include <gtest/gtest.h>

#include <string>

#include "inferkit/error.hpp"
#include "inferkit/scenario.hpp"

namespace inferkit {
namespace {

struct Failure {
  ErrorKind kind;
  std::string message;
};

Failure failure_of(std::string_view text) {
  try {
    parse_scenario(text, "s.scn");
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  ADD_FAILURE() << "no error raised for:\n" << text;
  return {ErrorKind::io, ""};
}

TEST(Scenario, DieWithComments) {
  const Scenario s = parse_scenario(R"(# loaded die
[variables]
face = 1 2 3 4 5 6   # six faces

[distribution]
uniform

[constraints]
expectation value(face) = 4.5
)");
  EXPECT_EQ(s.space.world_count(), 6u);
  for (double w : s.prior.weights()) EXPECT_EQ(w, 1.0 / 6.0);
  ASSERT_EQ(s.constraints.size(), 1u);
  const auto& e = std::get<ExpectationConstraint>(s.constraints[0]);
  EXPECT_EQ(e.values, (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(e.target, 4.5);
  EXPECT_EQ(s.constraint_labels[0], "expectation value(face) = 4.5");
  EXPECT_TRUE(s.warnings.empty());
}

TEST(Scenario, MissingDistributionIsUniform) {
  const Scenario s = parse_scenario("[variables]\nx = a b c\n");
  for (double w : s.prior.weights()) EXPECT_EQ(w, 1.0 / 3.0);
  EXPECT_TRUE(s.constraints.empty());
}

TEST(Scenario, TablesContinueAcrossLinesAndNormalize) {
  const Scenario s = parse_scenario("[variables]\nx = T F\ny = T F\n[distribution]\ntable = 1 1\n  1 1\n");
  for (double w : s.prior.weights()) EXPECT_EQ(w, 0.25);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("sum to 4"), std::string::npos);
}

TEST(Scenario, FactorsMultiply) {
  const Scenario s = parse_scenario(R"([variables]
ill = T F
test = pos neg
[distribution]
factor ill = 0.01 0.99
factor ill,test = 0.95 0.05 0.1 0.9
[constraints]
data test=pos
mass ill=T | test=neg = 0.2
expectation indicator(ill=T) = 0.5
expectation [1 2 3 4] = 2.5
[options]
tol = 1e-11
max_iter = 50
)");
  EXPECT_NEAR(s.prior.weight(0), 0.0095, 1e-15);
  EXPECT_NEAR(s.prior.weight(3), 0.891, 1e-15);
  EXPECT_TRUE(s.warnings.empty());
  ASSERT_EQ(s.constraints.size(), 4u);
  const auto& d = std::get<DataConstraint>(s.constraints[0]);
  EXPECT_EQ(d.block, BlockIndex({1}));
  EXPECT_EQ(d.observed, (std::vector<std::size_t>{0}));
  EXPECT_EQ(std::get<MassConstraint>(s.constraints[1]).target, 0.2);
  EXPECT_EQ(std::get<ExpectationConstraint>(s.constraints[2]).values, (std::vector<double>{1, 1, 0, 0}));
  EXPECT_EQ(s.options.tolerance, 1e-11);
  EXPECT_EQ(s.options.max_iterations, 50u);
}

TEST(Scenario, ErrorsCarryLineAndColumn) {
  struct Case {
    const char* text;
    ErrorKind kind;
    const char* where;
  };
  const Case cases[] = {
      {"face = 1 2\n", ErrorKind::syntax, "s.scn:1:1:"},
      {"[variables]\nx = a\n", ErrorKind::structural, "s.scn:2:1:"},
      {"[variables]\nx y = a b\n", ErrorKind::syntax, "s.scn:2:1:"},
      {"[variables]\nx = a b\n[nonsense]\n", ErrorKind::syntax, "s.scn:3:2:"},
      {"[variables]\nx = a b\n[distribution]\ntable = 1 oops\n", ErrorKind::syntax, "s.scn:4:11:"},
      {"[variables]\nx = a b\n[distribution]\ntable = 1 2 3\n", ErrorKind::structural, "s.scn:4:1:"},
      {"[variables]\nx = a b\n[distribution]\ntable = 1 -1\n", ErrorKind::domain, "s.scn:"},
      {"[variables]\nx = a b\n[distribution]\nfactor y = 1 1\n", ErrorKind::unknown_symbol, "s.scn:4:8:"},
      {"[variables]\nx = a b\n[constraints]\nmass x=c = 0.5\n", ErrorKind::unknown_symbol, "s.scn:4:"},
      {"[variables]\nx = a b\n[constraints]\nmass x=a & = 0.5\n", ErrorKind::syntax, "s.scn:4:"},
      {"[variables]\nx = a b\n[constraints]\nmass x=a = 1.5\n", ErrorKind::domain, "s.scn:4:1:"},
      {"[variables]\nx = a b\n[constraints]\nexpectation value(x) = 1\n", ErrorKind::domain, "s.scn:4:19:"},
      {"[variables]\nx = a b\n[constraints]\ndata x=z\n", ErrorKind::unknown_symbol, "s.scn:4:8:"},
      {"[variables]\nx = a b\n[constraints]\nprior x\n", ErrorKind::syntax, "s.scn:4:1:"},
      {"[variables]\nx = a b\n[options]\ntol = -1\n", ErrorKind::domain, "s.scn:4:7:"},
      {"[variables]\nx = a b\n[options]\nspeed = 3\n", ErrorKind::syntax, "s.scn:4:1:"},
      {"[constraints]\n", ErrorKind::structural, "s.scn:1:1:"},
      {"", ErrorKind::structural, "s.scn:1:1:"},
  };
  for (const auto& c : cases) {
    const Failure f = failure_of(c.text);
    EXPECT_EQ(f.kind, c.kind) << c.text << " -> " << f.message;
    EXPECT_EQ(f.message.rfind(c.where, 0), 0u) << c.text << " -> " << f.message;
  }
}

TEST(Scenario, FormulaErrorColumnsPointIntoTheFile) {
  // The stray ')' sits at column 12.
  const Failure f = failure_of("[variables]\nx = a b\n[constraints]\nmass x=a | ) = 0.5\n");
  EXPECT_EQ(f.kind, ErrorKind::syntax);
  EXPECT_EQ(f.message.rfind("s.scn:4:12:", 0), 0u) << f.message;
}

TEST(Scenario, LoadsShippedFiles) {
  for (const char* name : {"dice", "copied-bits", "triple-copy", "noisy-copy", "diagnosis", "weather"}) {
    const Scenario s = load_scenario(std::string(INFERKIT_SCENARIO_DIR) + "/" + name + ".scn");
    EXPECT_TRUE(s.warnings.empty()) << name;
  }
  try {
    load_scenario("/nonexistent/file.scn");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

}  // namespace
}  // namespace inferkit
