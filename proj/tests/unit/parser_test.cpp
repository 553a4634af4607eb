#include <gtest/gtest.h>

#include "generators.hpp"
#include "pla/error.hpp"
#include "pla/logic/parser.hpp"
#include "pla/logic/printer.hpp"

namespace pla {
namespace {

TEST(Parser, Precedence) {
  auto f = parse_formula("!P(x) & Q(x) | R(x) -> S(x) -> T(x)");
  const auto* imp = f->as<ast::Implies>();
  ASSERT_NE(imp, nullptr);
  EXPECT_TRUE(imp->lhs->is<ast::Or>());
  EXPECT_TRUE(imp->rhs->is<ast::Implies>());
  const auto* orr = imp->lhs->as<ast::Or>();
  EXPECT_TRUE(orr->lhs->is<ast::And>());
  EXPECT_TRUE(orr->lhs->as<ast::And>()->lhs->is<ast::Not>());
}

TEST(Parser, DistinctExpandsAgainstFreeVariables) {
  auto f = parse_formula("am[R(x,y) : y : distinct]");
  const auto* g = f->as<ast::Agg>();
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->eq_type.variables(), (std::vector<Variable>{"y", "x"}));
  EXPECT_FALSE(g->eq_type.equal("x", "y"));
  EXPECT_EQ(free_variables(*f), (std::vector<Variable>{"x"}));
}

TEST(Parser, AggregationForms) {
  EXPECT_NO_THROW(parse_formula("noisy-or[R(y) : y : y=y]"));
  EXPECT_NO_THROW(parse_formula("max[R(x) : x : x=x]"));
  EXPECT_NO_THROW(parse_formula("exists_at_least(0.5)[P(y), Q(y) : y : y != x]"));
  EXPECT_NO_THROW(parse_formula("wm(P(x); 0.25; R(x,x))"));
  EXPECT_NO_THROW(parse_formula("am[E(x,y,z) : z : distinct, x != y]"));
  auto f = parse_formula("exists_at_least(.50)[P(y), Q(y) : y : y=y]");
  EXPECT_EQ(f->as<ast::Agg>()->function, "exists_at_least(0.5)");
}

ParseError parse_error(const std::string& text) {
  try {
    parse_formula(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for " << text;
  return ParseError("", 0, 0);
}

TEST(Parser, Diagnostics) {
  auto e = parse_error("P(x) &\n  & Q(x)");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 3u);
  EXPECT_GT(parse_error("am[E(x,y,z) : z : distinct]").column(), 0u);  // x vs y undecided
  parse_error("1.5");
  parse_error("am[R(y) : y : y=x, y!=x]");
  parse_error("am[max[R(y) : y : y=y] : y : y=y]");  // rebinding
  parse_error("am[R(y) : y, y : y=y]");
  parse_error("P(x) $ Q(x)");
  parse_error("P(x) Q(x)");
}

TEST(Printer, RoundTripsGeneratedFormulas) {
  testing::Rng rng(99);
  testing::FormulaGenerator gen(testing::two_unary_one_binary(), {"x", "y"}, true);
  for (int i = 0; i < 300; ++i) {
    auto f = gen(rng, 4);
    const std::string text = print(*f);
    FormulaPtr g;
    ASSERT_NO_THROW(g = parse_formula(text)) << text;
    EXPECT_TRUE(structurally_equal(*f, *g)) << text << "\n" << print(*g);
  }
}

TEST(Printer, ConstantsRoundTripExactly) {
  for (double v : {0.0, 1.0, 0.1, 1e-7, 0.30000000000000004}) {
    auto g = parse_formula(print(*constant(v)));
    EXPECT_EQ(g->as<ast::Const>()->value, v);
  }
}

}  // namespace
}  // namespace pla
