#include <gtest/gtest.h>

#include <algorithm>

#include <gmpxx.h>

#include "henselium/diagnostics.hpp"
#include "henselium/error.hpp"
#include "henselium/expression.hpp"
#include "henselium/hensel.hpp"
#include "support.hpp"

using namespace henselium;
using henselium::testing::Gen;

namespace {

const Session& st() {
  static const Session s = Session::make({"s", "t"}, Field::rationals(), "(0,64)", "(0,50)");
  return s;
}

Series S(std::string_view text) { return parse_series(text, st()); }

const Series& running_root() {
  static const Series a =
      hensel_root(parse_polynomial("X^2 - X - t", st()), S("1"), Exponent({0, 64})).root;
  return a;
}

std::vector<Exponent> sorted(std::vector<Exponent> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// a_m from a^2 - a = t, a_0 = 1.
std::vector<mpz_class> recurrence_coefficients(int n) {
  std::vector<mpz_class> a(n, 0);
  a[0] = 1;
  for (int m = 1; m < n; ++m) {
    mpz_class sum = 0;
    for (int i = 1; i < m; ++i) sum += a[i] * a[m - i];
    a[m] = (m == 1 ? 1 : 0) - sum;
  }
  return a;
}

}  // namespace

TEST(Sampling, TruncationGaps) {
  const Series z = S("1 + t - t^2 + 2*t^3 + O(t^4)");
  EXPECT_EQ(gaps_of(sample_value_set(z, Exponent({0, 4}))),
            (std::vector<Exponent>{{0, 1}, {0, 2}, {0, 3}}));
}

TEST(Sampling, ExactElementHasInfiniteGap) {
  const auto gaps = gaps_of(sample_value_set(S("s"), Exponent({2, 0})));
  EXPECT_TRUE(std::any_of(gaps.begin(), gaps.end(), [](const Exponent& g) { return g.is_infinite(); }));
  EXPECT_EQ(classify(S("1 + t"), Exponent({0, 50})).verdict, Verdict::InBaseField);
}

TEST(Sampling, HorizonBeyondPrecisionFails) {
  try {
    (void)sample_value_set(S("1 + t + O(t^5)"), Exponent({0, 6}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionExceeded);
  }
}

TEST(Sampling, RecordsAreTruncations) {
  for (const ApproximationRecord& r : sample_value_set(running_root(), Exponent({0, 50}))) {
    EXPECT_EQ((running_root() - r.approximant).valuation().value(), r.gap);
    EXPECT_TRUE(r.approximant.is_exact());
  }
}

TEST(Sampling, ParallelMatchesSerial) {
  Gen gen(6);
  for (int i = 0; i < 50; ++i) {
    const Series z = gen.series(gen.field(), 2, 80, -10, 10, true);
    std::vector<Exponent> support;
    for (const Term& t : z.terms()) support.push_back(t.exponent);
    const std::vector<Exponent> gaps = gap_exponents(support);
    const auto serial = build_records_serial(z, gaps);
    const auto parallel = build_records_parallel(z, gaps);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
      ASSERT_EQ(serial[k].gap, parallel[k].gap);
      ASSERT_EQ(serial[k].approximant, parallel[k].approximant);
    }
  }
}

TEST(Classify, RunningExampleMatchesRecurrence) {
  const CofinalityReport r = classify(running_root(), Exponent({0, 50}));
  EXPECT_EQ(r.verdict, Verdict::Distinguished);
  ASSERT_TRUE(r.candidate_delta);
  EXPECT_EQ(*r.candidate_delta, ConvexSubgroup(2, 1));
  EXPECT_EQ(r.candidate_alpha, Exponent({0, 0}));
  const auto a = recurrence_coefficients(64);
  std::vector<Exponent> expected;
  for (int m = 1; m <= 49; ++m) {
    if (a[m] != 0) expected.push_back(Exponent({0, m}));
  }
  EXPECT_EQ(sorted(gaps_of(r.samples)), expected);
}

TEST(Classify, ShiftedByS) {
  const Series z = S("s") * running_root();
  const CofinalityReport r = classify(z, Exponent({1, 50}));
  EXPECT_EQ(r.verdict, Verdict::WeaklyDistinguished);
  EXPECT_EQ(r.candidate_alpha, Exponent({1, 0}));
  EXPECT_EQ(*r.candidate_delta, ConvexSubgroup(2, 1));
}

TEST(Classify, SparseSupportIsInconclusive) {
  const CofinalityReport r = classify(S("1 + t + t^2 + O(t^3)"), Exponent({0, 3}));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Invariants, FinalSegmentAndNoMaximum) {
  const CofinalityReport r = classify(running_root(), Exponent({0, 50}));
  const FsegmReport fs = fsegm_check(running_root(), r.samples);
  EXPECT_TRUE(fs.pass);
  EXPECT_GT(fs.checked, 0u);
  // Every gap but the last sampled one is exceeded by another gap, and the
  // coset members form a final segment of the gaps.
  const std::vector<Exponent> gaps = sorted(gaps_of(r.samples));
  const ConvexSubgroup& delta = *r.candidate_delta;
  bool in_coset = false;
  for (const Exponent& g : gaps) {
    const bool member = project(g - r.candidate_alpha, delta).is_zero();
    if (in_coset) {
      EXPECT_TRUE(member);
    }
    in_coset = in_coset || member;
  }
}

TEST(Invariants, ImmediacyOfHenselRoots) {
  const auto records = sample_value_set(running_root(), Exponent({0, 50}));
  for (const ApproximationRecord& r : records) {
    EXPECT_FALSE(running_root().coefficient(r.gap).is_zero());
  }
}

TEST(Aat, Examples) {
  const Exponent h({0, 50});
  const AatReport shifted = aat_check(running_root(), S("s"), S("3"), h);
  EXPECT_TRUE(shifted.pass);
  EXPECT_EQ(shifted.shift, Exponent({1, 0}));
  EXPECT_TRUE(aat_check(running_root(), S("1"), S("0"), h).pass);
  const AatReport inv = aat_check(running_root(), S("t^-1"), S("0"), h);
  EXPECT_TRUE(inv.pass);
  EXPECT_EQ(inv.shift, Exponent({0, -1}));
  EXPECT_THROW((void)aat_check(running_root(), S("0"), S("0"), h), Error);
}

// Monomial b and offsets c that neither undercut v(bz) nor cancel a term of
// bz; support sampling sees exactly the shifted gap set then.
TEST(AatProperty, RandomTransforms) {
  Gen gen(7);
  const Field q = Field::rationals();
  for (int i = 0; i < 30; ++i) {
    const Exponent vb = gen.exponent(2, -2, 2);
    const Series b = Series::monomial(q, vb, gen.nonzero_coefficient(q));
    const Series bz = b * running_root();
    Series c(q, 2);
    for (int k = gen.integer(0, 4); k > 0; --k) {
      const Exponent e = vb + (gen.coin() ? Exponent({0, gen.integer(0, 5)}) : Exponent({1, gen.integer(-3, 3)}));
      const Coefficient coeff = gen.nonzero_coefficient(q);
      const Coefficient existing = e < bz.precision() ? bz.coefficient(e) : Coefficient::zero(q);
      if ((existing + c.coefficient(e) + coeff).is_zero()) continue;
      c += Series::monomial(q, e, coeff);
    }
    const AatReport r = aat_check(running_root(), b, c, Exponent({0, 40}));
    EXPECT_TRUE(r.pass) << "b = " << henselium::testing::text(b) << ", c = " << henselium::testing::text(c);
  }
}

TEST(Chardist, Examples) {
  const ConvexSubgroup d1(2, 1);
  const ChardistReport a = chardist_check(running_root(), d1, Exponent({0, 50}));
  EXPECT_EQ(a.completion, Check::Pass);
  EXPECT_EQ(a.non_membership, Check::PassAtHorizon);
  EXPECT_EQ(a.verdict, Check::PassAtHorizon);
  EXPECT_EQ(chardist_check(S("1 + t"), d1, Exponent({0, 50})).non_membership, Check::Fail);
  EXPECT_EQ(chardist_check(S("s + t"), d1, Exponent({0, 50})).non_membership, Check::Fail);
  EXPECT_THROW((void)chardist_check(S("s^-1 + t"), d1, Exponent({0, 50})), Error);
}

TEST(Sd, Examples) {
  const ConvexSubgroup d1(2, 1);
  const SdReport a = sd_check(running_root(), parse_polynomial("X^2 - X - t", st()), d1, Exponent({0, 50}));
  EXPECT_EQ(a.sd1, Check::Pass);
  EXPECT_EQ(a.sd2, Check::PassAtHorizon);
  EXPECT_EQ(a.sd3, Check::PassAtHorizon);

  const SdReport b = sd_check(S("t"), parse_polynomial("X - t", st()), d1, Exponent({0, 50}));
  EXPECT_EQ(b.sd1, Check::Pass);
  EXPECT_EQ(b.sd2, Check::Fail);

  EXPECT_THROW((void)sd_check(running_root(), parse_polynomial("X^2 - X - t", st()), ConvexSubgroup(2, 0),
                              Exponent({0, 50})),
               Error);
}

TEST(Transfer, Examples) {
  const ConvexSubgroup d1(2, 1);
  const TransferReport a = coarsening_transfer_check(running_root(), d1, Exponent({0, 50}));
  EXPECT_TRUE(a.implication_holds);
  const TransferReport b = coarsening_transfer_check(S("1 + s*t"), d1, Exponent({2, 0}));
  EXPECT_EQ(b.fine.verdict, Verdict::InBaseField);
  EXPECT_TRUE(b.vacuous);
  EXPECT_TRUE(b.implication_holds);
  const TransferReport c = coarsening_transfer_check(S("s") * running_root(), d1, Exponent({1, 50}));
  EXPECT_TRUE(c.implication_holds);
}

TEST(Transfer, NonVacuous) {
  const Session s = Session::make({"s", "t"}, Field::rationals(), "(64,0)", "(40,0)");
  const Series z = hensel_root(parse_polynomial("X^2 - X - s", s), parse_series("1", s), s.precision).root;
  const TransferReport r = coarsening_transfer_check(z, ConvexSubgroup(2, 1), s.horizon);
  EXPECT_FALSE(r.vacuous);
  EXPECT_TRUE(r.implication_holds);
  EXPECT_EQ(r.coarse.verdict, Verdict::Distinguished);
}

TEST(Tower, ImplicationHolds) {
  const std::vector<ValPolynomial> outer = parse_tower_polynomial("X^2 - X - Y*t", st());
  const TowerReport r = tower_check(parse_polynomial("X^2 - X - t", st()), S("1"), outer, S("1"),
                                    Exponent({0, 40}), Exponent({0, 64}));
  EXPECT_FALSE(r.vacuous);
  EXPECT_TRUE(r.implication_holds);
  EXPECT_TRUE(is_weakly(r.over_k.verdict));
}

TEST(PrimeRoots, SmallFields) {
  const auto rank0 = [](Field f, std::initializer_list<long> coeffs) {
    std::vector<Series> cs;
    for (long c : coeffs) cs.push_back(Series::integer(f, 0, c));
    return ValPolynomial::from_coefficients(f, 0, cs);
  };
  const auto roots = roots_in_prime_field(rank0(Field::prime(5), {0, -1, 1}));
  ASSERT_TRUE(roots);
  EXPECT_EQ(roots->size(), 2u);
  const auto none = roots_in_prime_field(rank0(Field::rationals(), {-2, 0, 1}));
  ASSERT_TRUE(none);
  EXPECT_TRUE(none->empty());
  const auto three = roots_in_prime_field(rank0(Field::rationals(), {-6, 11, -6, 1}));
  ASSERT_TRUE(three);
  EXPECT_EQ(three->size(), 3u);
}
