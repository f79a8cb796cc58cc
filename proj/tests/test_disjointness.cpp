#include <gtest/gtest.h>

#include "henselium/disjointness.hpp"
#include "henselium/error.hpp"
#include "henselium/expression.hpp"
#include "henselium/hensel.hpp"

using namespace henselium;

namespace {

const Session& st() {
  static const Session s = Session::make({"s", "t"}, Field::rationals(), "(0,32)", "(0,30)");
  return s;
}

Series S(std::string_view text) { return parse_series(text, st()); }
ValPolynomial P(std::string_view text) { return parse_polynomial(text, st()); }

HenselElement element(std::string_view poly, std::string_view start = "1") {
  const ValPolynomial g = P(poly);
  return {g, hensel_root(g, S(start), st().precision).root};
}

}  // namespace

TEST(Disjointness, RunningExampleDropsDegree) {
  const FactorReport r = certify_degree_drop(P("X^2 - (2*s+1)*X + (s^2 + s - t)"), element("X^2 - X - t"),
                                             S("s"), st().horizon, st().precision);
  EXPECT_EQ(r.verdict, DropVerdict::DegreeDrop);
  EXPECT_EQ(r.factor_degrees, (std::vector<int>{1, 1}));
  EXPECT_EQ(r.input_degree, 2);
  EXPECT_FALSE(r.certificate < st().precision);
  EXPECT_EQ(r.hypothesis.shift_value, Exponent({1, 0}));
  EXPECT_TRUE(r.hypothesis.holds);
  ASSERT_TRUE(r.hypothesis.max_gap);
  EXPECT_LT(*r.hypothesis.max_gap, r.hypothesis.shift_value);
  // The classification used is that of a.
  EXPECT_EQ(r.delta_used, ConvexSubgroup(2, 1));
  EXPECT_EQ(r.alpha, Exponent({0, 0}));
  // Product certificate.
  ASSERT_EQ(r.factors.size(), 2u);
  const ValPolynomial f = P("X^2 - (2*s+1)*X + (s^2 + s - t)");
  EXPECT_TRUE((f - r.factors[0] * r.factors[1]).all_at_least(st().precision));
}

TEST(Disjointness, ElementOfTheHenselization) {
  const FactorReport r =
      certify_degree_drop(P("X^2 - X - t"), element("X^2 - X - t"), S("0"), st().horizon, st().precision);
  EXPECT_EQ(r.verdict, DropVerdict::DegreeDrop);
  EXPECT_EQ(r.factor_degrees, (std::vector<int>{1, 1}));
  EXPECT_TRUE(r.hypothesis.shift_value.is_infinite());
}

TEST(Disjointness, HypothesisNotMet) {
  try {
    (void)certify_degree_drop(P("(X - t^3)^2 - (X - t^3) - t"), element("X^2 - X - t"), S("t^3"), st().horizon,
                              st().precision);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisNotMet);
  }
}

TEST(Disjointness, WrongMinimalPolynomialRejected) {
  EXPECT_THROW((void)certify_degree_drop(P("X^2 - X - s"), element("X^2 - X - t"), S("s"), st().horizon,
                                         st().precision),
               Error);
  EXPECT_THROW((void)certify_degree_drop(P("2*X^2 - X - t"), element("X^2 - X - t"), S("0"), st().horizon,
                                         st().precision),
               Error);
}

TEST(Disjointness, DegreeAccounting) {
  const FactorReport r = certify_degree_drop(P("X^2 - (2*s+1)*X + (s^2 + s - t)"), element("X^2 - X - t"),
                                             S("s"), st().horizon, st().precision);
  int sum = 0;
  for (int d : r.factor_degrees) sum += d;
  EXPECT_EQ(sum, r.input_degree);
}

TEST(ResidueEvidence, RunningExample) {
  const ResidueEvidence ev = residue_membership_evidence(element("X^2 - X - t"), st().horizon);
  EXPECT_TRUE(ev.membership);
  EXPECT_TRUE(ev.agrees);
  EXPECT_EQ(ev.non_membership.verdict, Check::PassAtHorizon);
}

TEST(ResidueEvidence, ElementOfK) {
  const ResidueEvidence ev = residue_membership_evidence(element("X - 1 - t", "1"), st().horizon);
  EXPECT_FALSE(ev.membership);
  EXPECT_EQ(ev.classification.verdict, Verdict::InBaseField);
}

TEST(ResidueEvidence, ScaledElement) {
  // s*a, a root of X^2 - s*X - s^2*t.
  const Session s = Session::make({"s", "t"}, Field::rationals(), "(1,32)", "(1,30)");
  const HenselResult lifted =
      hensel_root(parse_polynomial("X^2 - X - t", s), parse_series("1", s), Exponent({0, 32}));
  const Series value = parse_series("s", s) * lifted.root;
  const ResidueEvidence ev =
      residue_membership_evidence({parse_polynomial("X^2 - s*X - s^2*t", s), value}, s.horizon);
  EXPECT_EQ(ev.classification.candidate_alpha, Exponent({1, 0}));
  EXPECT_TRUE(ev.membership);
  EXPECT_TRUE(ev.agrees);
  EXPECT_EQ(ev.non_membership.verdict, Check::PassAtHorizon);
}
