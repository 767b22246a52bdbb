#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "inferkit/error.hpp"
#include "inferkit/identities.hpp"
#include "inferkit/logic.hpp"
#include "inferkit/parser.hpp"

namespace inferkit {
namespace {

using testing::Rng;

std::string column(const Space& space, const Formula& f) {
  std::string out;
  for (const auto& row : truth_table(space, f)) out += row.value ? 'T' : 'F';
  return out;
}

Formula parse(const Space& space, std::string_view text) { return parse_formula(text, space); }

class LogicTest : public ::testing::Test {
 protected:
  Space ab = Space::binary({"a", "b"});
  Space abc = Space::binary({"a", "b", "c"});
  Formula a = Formula::atom(0, 0);
  Formula b = Formula::atom(1, 0);
  Formula c = Formula::atom(2, 0);
};

TEST_F(LogicTest, BinaryOperatorColumnsInTableOrder) {
  // Rows TT, TF, FT, FF.
  const std::vector<std::string> expected = {"TTTT", "FFFF", "TTFF", "TFTF", "FFTT", "FTFT", "TFFF", "TTTF",
                                             "FTTT", "FFFT", "FTTF", "TFFT", "TFTT", "TTFT", "FTFF", "FFTF"};
  const auto& ops = binary_operators();
  ASSERT_EQ(ops.size(), 16u);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    EXPECT_EQ(column(ab, ops[i].build(a, b)), expected[i]) << ops[i].name;
  }
}

TEST_F(LogicTest, OperatorSymbolsParseToTheSameColumn) {
  for (const auto& op : binary_operators()) {
    EXPECT_EQ(column(ab, parse(ab, op.symbol)), column(ab, op.build(a, b))) << op.symbol;
  }
}

TEST_F(LogicTest, EvaluateSingleWorlds) {
  EXPECT_FALSE(evaluate(ab, implies(a, b), World{{0, 1}}));
  EXPECT_TRUE(evaluate(ab, Formula::truth(), World{{1, 0}}));
  EXPECT_TRUE(evaluate(ab, nand(a, b), World{{1, 1}}));
}

TEST_F(LogicTest, UnboundAtomIsStructural) {
  try {
    evaluate(ab, c, World{{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::structural);
  }
}

TEST_F(LogicTest, TruthTableColumns) {
  EXPECT_EQ(column(ab, a & b), "TFFF");
  EXPECT_EQ(column(ab, a | !a), "TTTT");
  EXPECT_EQ(column(ab, a & !a), "FFFF");
}

TEST_F(LogicTest, CapacityGuard) {
  std::vector<std::string> names;
  for (int i = 0; i < 25; ++i) names.push_back("x" + std::to_string(i));
  const Space big = Space::binary(names);
  try {
    truth_table(big, Formula::atom(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::capacity);
  }
}

TEST_F(LogicTest, Equivalence) {
  EXPECT_TRUE(equivalent(ab, !(a & b), (!a) | (!b)));
  EXPECT_TRUE(equivalent(abc, a | (b & c), (a | b) & (a | c)));
  EXPECT_FALSE(equivalent(ab, a, !a));
}

TEST_F(LogicTest, Entailment) {
  const std::vector<Formula> mp = {a, implies(a, b)};
  EXPECT_TRUE(entails(ab, mp, b));
  const std::vector<Formula> mtp = {a | b, !a};
  EXPECT_TRUE(entails(ab, mtp, b));
  const std::vector<Formula> affirm = {implies(a, b)};
  EXPECT_FALSE(entails(ab, affirm, a));
}

TEST_F(LogicTest, ExplosionEntailsAnything) {
  Rng rng(11);
  const std::vector<Formula> absurd = {a & !a};
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(entails(abc, absurd, testing::random_formula(rng, abc, 3)));
}

TEST_F(LogicTest, EntailmentMatchesTautologyOfImplication) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    std::vector<Formula> premises;
    const std::size_t n = testing::uniform_index(rng, 3);
    for (std::size_t k = 0; k < n; ++k) premises.push_back(testing::random_formula(rng, abc, 2));
    const Formula goal = testing::random_formula(rng, abc, 2);
    EXPECT_EQ(entails(abc, premises, goal), equivalent(abc, implies(conjunction(premises), goal), Formula::truth()));
  }
}

TEST_F(LogicTest, ImportExport) {
  Rng rng(13);
  const std::vector<Formula> two = {a, b};
  EXPECT_TRUE(import_export_check(ab, two, a));
  const Space four = Space::binary({"p", "q", "r", "s"});
  for (int i = 0; i < 40; ++i) {
    std::vector<Formula> chain;
    const std::size_t n = i % 2 == 0 ? 3 : 5;
    for (std::size_t k = 0; k + 1 < n; ++k) chain.push_back(testing::random_formula(rng, four, 2));
    EXPECT_TRUE(import_export_check(four, chain, testing::random_formula(rng, four, 2)));
  }
}

TEST_F(LogicTest, CompileNand) {
  EXPECT_EQ(compile_nand(!a), nand(a, a));
  EXPECT_EQ(compile_nand(a & b), nand(nand(a, b), nand(a, b)));
  const Formula f = compile_nand(iff(a, b));
  EXPECT_TRUE(is_nand_only(f));
  EXPECT_TRUE(equivalent(ab, f, iff(a, b)));
}

TEST_F(LogicTest, CompileNandPreservesMeaning) {
  Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, abc, 4);
    const Formula g = compile_nand(f);
    EXPECT_TRUE(is_nand_only(g)) << to_string(f, abc);
    EXPECT_TRUE(equivalent(abc, f, g)) << to_string(f, abc);
  }
}

TEST_F(LogicTest, ClassifySet) {
  const Space die({{"x", {"1", "2", "3"}}});
  const std::vector<Formula> values = {parse(die, "x=1"), parse(die, "x=2"), parse(die, "x=3")};
  const auto part = classify_set(die, values);
  EXPECT_TRUE(part.mutually_exclusive);
  EXPECT_TRUE(part.exhaustive);

  const std::vector<Formula> lem = {a, !a};
  EXPECT_TRUE(classify_set(ab, lem).mutually_exclusive);
  EXPECT_TRUE(classify_set(ab, lem).exhaustive);

  const std::vector<Formula> overlap = {a, a | b};
  EXPECT_FALSE(classify_set(ab, overlap).mutually_exclusive);
  EXPECT_FALSE(classify_set(ab, overlap).exhaustive);
}

TEST_F(LogicTest, DeMorganOnRandomFormulas) {
  Rng rng(15);
  for (int i = 0; i < 500; ++i) {
    const Formula f = testing::random_formula(rng, abc, 3);
    const Formula g = testing::random_formula(rng, abc, 3);
    EXPECT_TRUE(equivalent(abc, !(f & g), (!f) | (!g)));
    EXPECT_TRUE(equivalent(abc, !(f | g), (!f) & (!g)));
  }
}

TEST_F(LogicTest, LatticeLawsOnRandomFormulasOverFourAtoms) {
  Rng rng(16);
  const Space four = Space::binary({"p", "q", "r", "s"});
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, four, 3);
    const Formula g = testing::random_formula(rng, four, 3);
    const Formula h = testing::random_formula(rng, four, 3);
    EXPECT_TRUE(equivalent(four, f & f, f));
    EXPECT_TRUE(equivalent(four, f | f, f));
    EXPECT_TRUE(equivalent(four, (f & g) | g, g));
    EXPECT_TRUE(equivalent(four, (f | g) & g, g));
    EXPECT_TRUE(equivalent(four, f & (g | h), (f & g) | (f & h)));
    EXPECT_TRUE(equivalent(four, f | (g & h), (f | g) & (f | h)));
  }
}

TEST(IdentityCatalog, EveryLawHoldsOverThreeAtoms) {
  for (const auto& law : identity_catalog()) {
    const auto r = verify_identity(law, 3);
    EXPECT_EQ(r.failures, 0u) << law.name;
    EXPECT_GT(r.instances, 0u);
  }
}

TEST(IdentityCatalog, FalseLawIsCaught) {
  const Formula a = Formula::atom(0, 0);
  const Formula b = Formula::atom(1, 0);
  const Identity bogus{"converse", 2, implies(a, b), implies(b, a)};
  EXPECT_GT(verify_identity(bogus, 2).failures, 0u);
}

TEST(IdentityCatalog, RulesAreValid) {
  for (const auto& rule : inference_rules()) {
    const unsigned atoms = rule.arity > 3 ? 2 : 3;
    EXPECT_EQ(verify_rule(rule, atoms).failures, 0u) << rule.name;
  }
}

TEST(IdentityCatalog, InstanceCountIsAllTruthFunctionTuples) {
  // 256 truth functions of 3 atoms, substituted into each of 2 slots.
  EXPECT_EQ(verify_identity(*find_identity("de-morgan-and"), 3).instances, 256u * 256u);
  EXPECT_EQ(find_identity("no-such-law"), nullptr);
}

TEST(Parser, PrecedenceAndAssociativity) {
  const Space s = Space::binary({"a", "b", "c"});
  const Formula a = Formula::atom(0, 0);
  const Formula b = Formula::atom(1, 0);
  const Formula c = Formula::atom(2, 0);
  EXPECT_EQ(parse_formula("a & !b", s), a & !b);
  EXPECT_EQ(parse_formula("a -> b -> c", s), implies(a, implies(b, c)));
  EXPECT_EQ(parse_formula("a | b & c", s), a | (b & c));
  EXPECT_EQ(parse_formula("a <-> b <-> c", s), iff(iff(a, b), c));
  EXPECT_EQ(parse_formula("a -> b <-> c", s), iff(implies(a, b), c));
  EXPECT_EQ(parse_formula("a ∧ ¬b ∨ ⊥", s), (a & !b) | Formula::falsity());
  EXPECT_EQ(parse_formula("a=F", s), Formula::atom(0, 1));
}

TEST(Parser, MultiValuedAtoms) {
  const Space die({{"x", {"1", "2", "3", "4", "5", "6"}}});
  EXPECT_EQ(parse_formula("x=2 | x=3", die), Formula::atom(0, 1) | Formula::atom(0, 2));
}

TEST(Parser, RoundTripThroughPrinter) {
  Rng rng(17);
  const Space s({{"x", {"1", "2", "3"}}, {"y", {"T", "F"}}});
  for (int i = 0; i < 500; ++i) {
    const Formula f = testing::random_formula(rng, s, 4);
    const Formula back = parse_formula(to_string(f, s), s);
    EXPECT_TRUE(equivalent(s, f, back)) << to_string(f, s);
  }
}

TEST(Parser, Errors) {
  const Space s = Space::binary({"a", "b"});
  const Space die({{"x", {"1", "2", "3"}}});
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io;
  };
  EXPECT_EQ(kind_of([&] { parse_formula("a &", s); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([&] { parse_formula("(a | b", s); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([&] { parse_formula("a $ b", s); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([&] { parse_formula("z", s); }), ErrorKind::unknown_symbol);
  EXPECT_EQ(kind_of([&] { parse_formula("x=7", die); }), ErrorKind::unknown_symbol);
  EXPECT_EQ(kind_of([&] { parse_formula("x", die); }), ErrorKind::unknown_symbol);
  try {
    parse_formula("a & & b", s);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
  }
}

TEST(Parser, BinaryFormulasBuildSpaceInOrder) {
  const std::vector<std::string> texts = {"q -> p", "p & r"};
  const auto parsed = parse_binary_formulas(texts);
  ASSERT_EQ(parsed.space.variable_count(), 3u);
  EXPECT_EQ(parsed.space.variable(0).name, "q");
  EXPECT_EQ(parsed.space.variable(1).name, "p");
  EXPECT_EQ(parsed.space.variable(2).name, "r");
}

}  // namespace
}  // namespace inferkit
