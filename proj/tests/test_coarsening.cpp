#include <gtest/gtest.h>

#include "henselium/coarsening.hpp"
#include "henselium/error.hpp"
#include "henselium/expression.hpp"
#include "support.hpp"

using namespace henselium;
using henselium::testing::Gen;
using henselium::testing::text;

namespace {

const Session& st() {
  static const Session s = Session::make({"s", "t"}, Field::rationals());
  return s;
}
const Session& t_only() {
  static const Session s = Session::make({"t"}, Field::rationals());
  return s;
}

const ConvexSubgroup d1(2, 1);

}  // namespace

TEST(Coarsening, CoarseValue) {
  EXPECT_EQ(coarse_value(parse_series("s^2*t^-1 + s^3*t", st()), d1).value(), Exponent({2}));
  EXPECT_EQ(coarse_value(parse_series("t^-1 + 1", st()), d1).value(), Exponent({0}));
  EXPECT_EQ(coarse_value(parse_series("1 + t", st()), d1).value(), Exponent({0}));
}

TEST(Coarsening, Residue) {
  EXPECT_EQ(residue_series(parse_series("t^-1 + 1 + s*t", st()), d1), parse_series("t^-1 + 1", t_only()));
  const Series zero = residue_series(parse_series("s + s^2*t", st()), d1);
  EXPECT_TRUE(zero.is_exact_zero());
  const Series r = residue_series(parse_series("1 + t - t^2 + O(t^3)", st()), d1);
  EXPECT_EQ(r, parse_series("1 + t - t^2 + O(t^3)", t_only()));
  EXPECT_EQ(r.precision(), Exponent({3}));
}

TEST(Coarsening, ResidueOfNegativeCoarseValueFails) {
  try {
    (void)residue_series(parse_series("s^-1 + t", st()), d1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeCoarseValue);
  }
}

TEST(Coarsening, ResidueEmbedRoundTrip) {
  const Series x = parse_series("t^-2 + 5*t + O(t^9)", st());
  EXPECT_EQ(embed_residue(residue_series(x, d1), d1), x);
}

TEST(Coarsening, ComposeExamples) {
  const ComposeReport a = compose_check(parse_series("s^2*t^-1 + s^3*t", st()), d1);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.head, Exponent({2}));
  EXPECT_EQ(a.residue_valuation.value(), Exponent({-1}));
  EXPECT_EQ(a.valuation, Exponent({2, -1}));

  for (std::size_t j = 0; j <= 2; ++j) {
    const ComposeReport one = compose_check(parse_series("1", st()), ConvexSubgroup(2, j));
    EXPECT_TRUE(one.pass);
    EXPECT_TRUE(one.valuation.is_zero());
  }
  const ComposeReport t = compose_check(parse_series("t", st()), d1);
  EXPECT_TRUE(t.pass);
  EXPECT_EQ(t.head, Exponent({0}));
  EXPECT_EQ(t.tail, Exponent({1}));
}

TEST(CoarseningProperty, ComposeRoundTrip) {
  Gen gen(3);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Field f = gen.field();
    Series x = gen.series(f, 2, 8, -5, 5, true);
    if (!x.has_support()) continue;
    const std::size_t j = static_cast<std::size_t>(gen.integer(0, 2));
    const ComposeReport r = compose_check(x, ConvexSubgroup(2, j));
    ASSERT_TRUE(r.pass) << text(x) << " at Delta_" << j;
    ++checked;
  }
  EXPECT_GT(checked, 800);
}

TEST(CoarseningProperty, ResidueIsMultiplicativeOnUnits) {
  Gen gen(4);
  for (int i = 0; i < 300; ++i) {
    const Field f = gen.field();
    // Units of the coarse valuation: coarse value 0.
    const Series x = gen.series(f, 2, 6, 0, 4, true) + Series::integer(f, 2, 1).shifted(Exponent({0, -6}));
    const Series y = gen.series(f, 2, 6, 0, 4, true) + Series::integer(f, 2, 1).shifted(Exponent({0, -6}));
    ASSERT_EQ(residue_series(x * y, d1), residue_series(x, d1) * residue_series(y, d1));
  }
}
