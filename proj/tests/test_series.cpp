#include <gtest/gtest.h>

#include <compare>

#include "henselium/error.hpp"
#include "henselium/expression.hpp"
#include "henselium/series.hpp"
#include "support.hpp"

using namespace henselium;
using henselium::testing::Gen;
using henselium::testing::text;

namespace {

Session st(Field f = Field::rationals()) { return Session::make({"s", "t"}, f); }

Series S(std::string_view text, const Session& s = st()) { return parse_series(text, s); }

}  // namespace

TEST(Exponent, LexOrder) {
  EXPECT_LT(Exponent({0, 50}), Exponent({1, -100}));
  EXPECT_LT(Exponent({-1, 7}), Exponent({0, 0}));
  EXPECT_LT(Exponent({3, 3}), Exponent::infinity(2));
  EXPECT_EQ(Exponent::least_positive(2), Exponent({0, 1}));
  EXPECT_EQ(Exponent::parse("(2,-1)"), Exponent({2, -1}));
  EXPECT_EQ(Exponent::parse("inf", 2), Exponent::infinity(2));
  EXPECT_EQ(Exponent({2, -1}).str(), "(2,-1)");
}

TEST(Exponent, RankMismatchFails) {
  try {
    (void)(Exponent({1}) + Exponent({1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
  }
}

TEST(Exponent, ConvexSubgroupParts) {
  const ConvexSubgroup d1(2, 1);
  EXPECT_EQ(project(Exponent({3, -2}), d1), Exponent({3}));
  EXPECT_EQ(tail(Exponent({3, -2}), d1), Exponent({-2}));
  EXPECT_EQ(pad(Exponent({3}), d1), Exponent({3, 0}));
  EXPECT_TRUE(d1.contains(Exponent({0, 9})));
  EXPECT_FALSE(d1.contains(Exponent({1, 0})));
}

TEST(Exponent, MultipleReaches) {
  EXPECT_TRUE(multiple_reaches(Exponent({0, 1}), Exponent({0, 64})));
  EXPECT_FALSE(multiple_reaches(Exponent({0, 1}), Exponent({1, 0})));
  EXPECT_TRUE(multiple_reaches(Exponent({1, -5}), Exponent({3, 0})));
}

TEST(Coefficient, PrimeFieldArithmetic) {
  const Field f5 = Field::prime(5);
  const Coefficient two = Coefficient::from_integer(f5, 2);
  EXPECT_TRUE((two * two.inverse()).is_one());
  EXPECT_TRUE(Coefficient::from_integer(f5, 10).is_zero());
  EXPECT_EQ(Coefficient::from_rational(f5, mpq_class(1, 2)), Coefficient::from_integer(f5, 3));
  EXPECT_THROW(Field::prime(6), Error);
  EXPECT_EQ(Field::parse("fp:7"), Field::prime(7));
  EXPECT_EQ(Field::parse("q"), Field::rationals());
}

TEST(Series, ParseValuation) {
  const Series x = S("s^2*t^-1 + 3*s^3*t^1");
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.valuation().value(), Exponent({2, -1}));
  EXPECT_TRUE(x.is_exact());
}

TEST(Series, ProductPrecision) {
  const Series x = S("t + O(t^5)");
  const Series y = S("1 + s + O(t^3)");
  const Series p = x * y;
  EXPECT_EQ(p.precision(), min(Exponent({0, 1}) + Exponent({0, 3}), Exponent({0, 0}) + Exponent({0, 5})));
  EXPECT_EQ(p.precision(), Exponent({0, 4}));
}

TEST(Series, SumPrecisionIsMinimum) {
  EXPECT_EQ((S("1 + O(t^3)") + S("t + O(t^7)")).precision(), Exponent({0, 3}));
}

TEST(Series, InvertGeometric) {
  const Series x = S("1 - t");
  const Series inv = invert(x, Exponent({0, 10}));
  EXPECT_EQ(inv.size(), 10u);
  EXPECT_TRUE((inv * x).agrees_with(Series::integer(Field::rationals(), 2, 1)));
}

TEST(Series, InvertUnreachable) {
  // Powers of t never reach (1,0).
  const Series x = S("1 + t");
  try {
    (void)invert(x, Exponent({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionUnreachable);
  }
}

TEST(Series, InvertZeroFails) {
  EXPECT_THROW((void)invert(Series(Field::rationals(), 2), Exponent({0, 5})), Error);
}

TEST(Series, TruncateAt) {
  const Series x = S("1 + t + t^2 + s");
  const Series tr = truncate_at(x, Exponent({0, 2}));
  EXPECT_EQ(tr, S("1 + t"));
  EXPECT_TRUE(tr.is_exact());
}

TEST(Series, FieldMismatch) {
  try {
    (void)(S("1") + S("1", st(Field::prime(5))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
  }
}

// Ring and valuation laws on random triples, modulo precision.
TEST(SeriesProperty, RingAndValuationLaws) {
  Gen gen(1);
  for (int i = 0; i < 2000; ++i) {
    const Field f = gen.field();
    const Series x = gen.series(f, 2), y = gen.series(f, 2), z = gen.series(f, 2);
    ASSERT_TRUE(((x * y) * z).agrees_with(x * (y * z))) << text(x) << " | " << text(y) << " | " << text(z);
    ASSERT_TRUE((x * (y + z)).agrees_with(x * y + x * z));
    ASSERT_TRUE(((x + y) + z).agrees_with(x + (y + z)));
    ASSERT_TRUE((x * y).agrees_with(y * x));
    ASSERT_TRUE((x - x).agrees_with(Series(f, 2)));
    const Valuation vx = x.valuation(), vy = y.valuation();
    const Valuation vsum = (x + y).valuation();
    ASSERT_TRUE(vsum.at_least(min(vx.bound(), vy.bound())));
    if (vx.known() && vy.known() && !vx.is_infinite() && !vy.is_infinite()) {
      const Valuation vp = (x * y).valuation();
      if (vp.known()) {
        ASSERT_EQ(vp.value(), vx.value() + vy.value());
      }
    }
  }
}

TEST(SeriesKernel, ParallelMatchesSerial) {
  Gen gen(2);
  for (int i = 0; i < 200; ++i) {
    const Field f = gen.field();
    const Series x = gen.series(f, 2, 60, -20, 20);
    const Series y = gen.series(f, 2, 60, -20, 20);
    ASSERT_EQ(mul_serial(x, y), mul_parallel(x, y));
  }
}

namespace {

// All pairwise products summed by from_terms.
Series naive_product(const Series& x, const Series& y) {
  std::vector<Term> terms;
  for (const Term& a : x.terms()) {
    for (const Term& b : y.terms()) terms.push_back({a.exponent + b.exponent, a.coeff * b.coeff});
  }
  return Series::from_terms(x.field(), x.rank(), std::move(terms), product_precision(x, y));
}

}  // namespace

// Dense boxes, sparse boxes and truncation, past the parallel threshold.
TEST(SeriesKernel, LargeProductsMatchNaive) {
  Gen gen(9);
  for (int i = 0; i < 60; ++i) {
    const Field f = gen.field();
    const std::size_t rank = static_cast<std::size_t>(gen.integer(1, 3));
    const long spread = gen.coin() ? 30 : 1000000;
    const Series x = gen.series(f, rank, 150, -spread, spread);
    const Series y = gen.series(f, rank, 150, -spread, spread);
    const Series expected = naive_product(x, y);
    ASSERT_EQ(mul_serial(x, y), expected) << "rank " << rank << ", spread " << spread;
    ASSERT_EQ(mul_parallel(x, y), expected) << "rank " << rank << ", spread " << spread;
    const Exponent cap = gen.exponent(rank, -spread, spread);
    ASSERT_EQ(mul_truncated(x, y, cap), expected.with_precision(min(expected.precision(), cap)));
  }
}

TEST(SeriesExamples, Valuation) {
  EXPECT_EQ(S("t").valuation().value(), Exponent({0, 1}));
  const Valuation unknown = Series::zero(Field::rationals(), 2, Exponent({0, 8})).valuation();
  EXPECT_FALSE(unknown.known());
  EXPECT_EQ(unknown.bound(), Exponent({0, 8}));
  EXPECT_EQ(Exponent({1, 0}) <=> Exponent({0, 999}), std::strong_ordering::greater);
  EXPECT_EQ(Exponent({0, -3}) <=> Exponent({0, 2}), std::strong_ordering::less);
  EXPECT_EQ(Exponent({2, 5}) <=> Exponent({2, 5}), std::strong_ordering::equal);
  EXPECT_EQ(project(Exponent::infinity(2), ConvexSubgroup(2, 1)), Exponent::infinity(1));
}

TEST(SeriesExamples, Add) {
  EXPECT_EQ(S("1 + t") + S("-1"), S("t"));
  const Series sum = S("t + O(t^5)") + S("t^2 + O(t^3)");
  EXPECT_EQ(sum, S("t + t^2 + O(t^3)"));
  EXPECT_EQ((S("s") + S("t")).valuation().value(), Exponent({0, 1}));
}

TEST(SeriesExamples, Mul) {
  EXPECT_EQ(S("t") * S("t^-1"), S("1"));
  EXPECT_EQ(S("(1+t)*(1-t)"), S("1 - t^2"));
  EXPECT_EQ(S("1 + t + O(t^10)") * S("t^3"), S("t^3 + t^4 + O(t^13)"));
}

TEST(SeriesExamples, Invert) {
  EXPECT_EQ(invert(S("1 + 2*t"), Exponent({0, 4})), S("1 - 2*t + 4*t^2 - 8*t^3 + O(t^4)"));
  EXPECT_EQ(invert(S("t"), Exponent({0, 4})), S("t^-1"));
  try {
    (void)invert(S("O(t^8)"), Exponent({0, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroLeadingTerm);
  }
}

TEST(SeriesExamples, ExpandRational) {
  EXPECT_EQ(expand_rational(S("1"), S("1 - t"), Exponent({0, 4})), S("1 + t + t^2 + t^3 + O(t^4)"));
  EXPECT_TRUE(expand_rational(S("t"), S("t"), Exponent({0, 4})).agrees_with(S("1")));
  EXPECT_TRUE(expand_rational(S("1 + 4*t"), S("1"), Exponent({0, 4})).agrees_with(S("1 + 4*t")));
}

TEST(SeriesExamples, Truncate) {
  EXPECT_EQ(truncate_at(S("1 + t - t^2 + 2*t^3"), Exponent({0, 2})), S("1 + t"));
  EXPECT_EQ(truncate_at(S("t + s"), Exponent({0, 0})), S("0"));
  EXPECT_EQ(truncate_at(S("s^2*t^-1 + s^3"), Exponent({3, 0})), S("s^2*t^-1"));
  EXPECT_THROW((void)truncate_at(S("1 + O(t^3)"), Exponent({0, 5})), Error);
}

TEST(ValueGroupExamples, CosetCofinality) {
  const ConvexSubgroup d1(2, 1);
  const std::vector<Exponent> a{{0, 1}, {0, 2}, {0, 3}};
  EXPECT_TRUE(coset_cofinal_in(a, Exponent({0, 0}), d1, Exponent({0, 4})).cofinal);
  const std::vector<Exponent> b{{1, 0}};
  const CofinalityVerdict vb = coset_cofinal_in(b, Exponent({0, 0}), d1, Exponent({2, 0}));
  EXPECT_FALSE(vb.cofinal);
  ASSERT_TRUE(vb.counterexample);
  EXPECT_EQ(*vb.counterexample, Exponent({1, 0}));
  std::vector<Exponent> c;
  for (int m = 1; m <= 50; ++m) c.push_back(Exponent({1, m}));
  EXPECT_TRUE(coset_cofinal_in(c, Exponent({1, 0}), d1, Exponent({1, 51})).cofinal);
  EXPECT_THROW((void)coset_cofinal_in({}, Exponent({0, 0}), d1, Exponent({0, 4})), Error);
}
