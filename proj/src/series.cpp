#include "henselium/series.hpp"

#include <algorithm>

#include "henselium/error.hpp"

namespace henselium {

const Exponent& Valuation::value() const {
  if (!known_) fail(ErrorCode::InsufficientPrecision, "valuation unknown below " + exponent_.str());
  return exponent_;
}

std::string Valuation::str() const { return known_ ? exponent_.str() : ">=" + exponent_.str(); }

Series::Series(Field field, std::size_t rank)
    : field_(field), rank_(rank), precision_(Exponent::infinity(rank)) {}

Series::Series(Field field, std::size_t rank, std::vector<Term> sorted_terms, Exponent precision)
    : field_(field), rank_(rank), terms_(std::move(sorted_terms)), precision_(std::move(precision)) {}

Series Series::zero(Field field, std::size_t rank, Exponent precision) {
  if (precision.rank() != rank) fail(ErrorCode::RankMismatch, "precision rank mismatch");
  return Series(field, rank, {}, std::move(precision));
}

Series Series::constant(Field field, std::size_t rank, const Coefficient& c) {
  return monomial(field, Exponent::zero(rank), c);
}

Series Series::integer(Field field, std::size_t rank, long value) {
  return constant(field, rank, Coefficient::from_integer(field, value));
}

Series Series::monomial(Field field, const Exponent& exponent, const Coefficient& c) {
  if (!(c.field() == field)) fail(ErrorCode::FieldMismatch, "coefficient field mismatch");
  if (exponent.is_infinite()) fail(ErrorCode::InvalidArgument, "monomial with infinite exponent");
  std::vector<Term> terms;
  if (!c.is_zero()) terms.push_back({exponent, c});
  return Series(field, exponent.rank(), std::move(terms), Exponent::infinity(exponent.rank()));
}

Series Series::monomial(Field field, const Exponent& exponent) {
  return monomial(field, exponent, Coefficient::one(field));
}

Series Series::from_terms(Field field, std::size_t rank, std::vector<Term> terms,
                          Exponent precision) {
  if (precision.rank() != rank) fail(ErrorCode::RankMismatch, "precision rank mismatch");
  for (const Term& t : terms) {
    if (t.exponent.rank() != rank) fail(ErrorCode::RankMismatch, "term rank mismatch");
    if (t.exponent.is_infinite()) fail(ErrorCode::InvalidArgument, "term with infinite exponent");
    if (!(t.coeff.field() == field)) fail(ErrorCode::FieldMismatch, "term field mismatch");
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (Term& t : terms) {
    if (!(t.exponent < precision)) break;
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  return Series(field, rank, std::move(merged), std::move(precision));
}

Valuation Series::valuation() const {
  if (!terms_.empty()) return Valuation::exact(terms_.front().exponent);
  if (precision_.is_infinite()) return Valuation::exact(precision_);
  return Valuation::unknown_below(precision_);
}

const Term& Series::leading() const {
  if (terms_.empty()) fail(ErrorCode::ZeroLeadingTerm, "series has no known terms");
  return terms_.front();
}

Coefficient Series::coefficient(const Exponent& e) const {
  if (!(e < precision_)) {
    fail(ErrorCode::PrecisionExceeded, "coefficient at " + e.str() + " is beyond precision " +
                                           precision_.str());
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return Coefficient::zero(field_);
}

Series Series::with_precision(const Exponent& p) const {
  if (p.rank() != rank_) fail(ErrorCode::RankMismatch, "precision rank mismatch");
  if (!(p < precision_)) return *this;
  auto end = std::lower_bound(terms_.begin(), terms_.end(), p,
                              [](const Term& t, const Exponent& x) { return t.exponent < x; });
  return Series(field_, rank_, std::vector<Term>(terms_.begin(), end), p);
}

Series Series::shifted(const Exponent& shift) const {
  if (shift.is_infinite()) fail(ErrorCode::InvalidArgument, "shift by infinity");
  Series out = *this;
  for (Term& t : out.terms_) t.exponent = t.exponent + shift;
  out.precision_ = precision_ + shift;
  return out;
}

Series Series::scaled(const Coefficient& c) const {
  if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "scalar field mismatch");
  if (c.is_zero()) return Series::zero(field_, rank_, precision_);
  Series out = *this;
  for (Term& t : out.terms_) t.coeff *= c;
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

void Series::check_compatible(const Series& other) const {
  if (rank_ != other.rank_) {
    fail(ErrorCode::RankMismatch,
         "series rank mismatch: " + std::to_string(rank_) + " vs " + std::to_string(other.rank_));
  }
  if (!(field_ == other.field_)) {
    fail(ErrorCode::FieldMismatch, "series field mismatch: " + field_.str() + " vs " + other.field_.str());
  }
}

Series operator+(const Series& x, const Series& y) {
  x.check_compatible(y);
  Exponent precision = min(x.precision_, y.precision_);
  std::vector<Term> out;
  out.reserve(x.terms_.size() + y.terms_.size());
  auto i = x.terms_.begin();
  auto j = y.terms_.begin();
  while (i != x.terms_.end() || j != y.terms_.end()) {
    const Term* next = nullptr;
    if (j == y.terms_.end() || (i != x.terms_.end() && i->exponent < j->exponent)) {
      next = &*i++;
    } else if (i == x.terms_.end() || j->exponent < i->exponent) {
      next = &*j++;
    } else {
      Coefficient c = i->coeff + j->coeff;
      Exponent e = i->exponent;
      ++i;
      ++j;
      if (!(e < precision)) break;
      if (!c.is_zero()) out.push_back({std::move(e), std::move(c)});
      continue;
    }
    if (!(next->exponent < precision)) break;
    out.push_back(*next);
  }
  return Series(x.field_, x.rank_, std::move(out), std::move(precision));
}

Series operator-(const Series& x, const Series& y) { return x + (-y); }

Series operator*(const Series& x, const Series& y) { return mul_parallel(x, y); }

Series& Series::operator+=(const Series& other) { return *this = *this + other; }
Series& Series::operator-=(const Series& other) { return *this = *this - other; }
Series& Series::operator*=(const Series& other) { return *this = *this * other; }

bool Series::operator==(const Series& other) const {
  return rank_ == other.rank_ && field_ == other.field_ && precision_ == other.precision_ &&
         terms_ == other.terms_;
}

bool Series::agrees_with(const Series& other) const { return !(*this - other).has_support(); }

Exponent product_precision(const Series& x, const Series& y) {
  x.check_compatible(y);
  const Exponent vx = x.valuation().bound();
  const Exponent vy = y.valuation().bound();
  return min(vx + y.precision(), vy + x.precision());
}

Series invert(const Series& x, const Exponent& target) {
  if (target.rank() != x.rank()) fail(ErrorCode::RankMismatch, "target precision rank mismatch");
  if (!x.has_support()) {
    fail(ErrorCode::ZeroLeadingTerm, "cannot invert a series with no known terms (precision " +
                                         x.precision().str() + ")");
  }
  const Field field = x.field();
  const std::size_t rank = x.rank();
  const Term& lead = x.leading();
  const Exponent e = lead.exponent;
  const Coefficient lead_inv = lead.coeff.inverse();

  // x = c t^e (1 + u) with v(u) > 0; the inverse needs 1/(1+u) to target + e.
  Exponent result_precision = target;
  if (x.precision().is_finite()) {
    result_precision = min(result_precision, x.precision() - e.scaled(2));
  }
  const Series unit_part = x.shifted(-e).scaled(lead_inv);
  const Series one = Series::integer(field, rank, 1);
  const Series u = unit_part - one;
  if (u.is_exact_zero()) return Series::monomial(field, -e, lead_inv);

  if (result_precision.is_infinite()) {
    if (u.has_support() || !u.is_exact()) {
      fail(ErrorCode::PrecisionUnreachable,
           "the inverse of a non-monomial has no finite expansion; give a finite target");
    }
    return Series::monomial(field, -e, lead_inv);
  }

  const Exponent inner_target = result_precision + e;
  Series sum = one.with_precision(inner_target);
  if (u.has_support()) {
    const Exponent vu = u.leading().exponent;
    if (!multiple_reaches(vu, inner_target)) {
      fail(ErrorCode::PrecisionUnreachable,
           "geometric series with step " + vu.str() + " never reaches " + inner_target.str());
    }
    // sum_{k < 2^m} w^k = prod_{i < m} (1 + w^(2^i)), with w = -u.
    Series power = (-u).with_precision(inner_target);
    while (power.has_support()) {
      sum = (sum + mul_truncated(sum, power, inner_target)).with_precision(inner_target);
      power = mul_truncated(power, power, inner_target);
    }
    sum = sum.with_precision(power.precision());
  } else {
    sum = sum.with_precision(u.precision());
  }
  return sum.shifted(-e).scaled(lead_inv);
}

Series expand_rational(const Series& numer, const Series& denom, const Exponent& target) {
  numer.check_compatible(denom);
  const Exponent vn = numer.valuation().bound();
  if (vn.is_infinite()) return numer;
  // numer * denom^-1 has precision vn + prec(denom^-1); aim the inverse so
  // that the quotient reaches `target`.
  const Series inverse = invert(denom, target - vn);
  Series quotient = numer * inverse;
  return quotient.is_exact() ? quotient : quotient.with_precision(target);
}

Series truncate_at(const Series& x, const Exponent& gamma) {
  if (gamma.rank() != x.rank()) fail(ErrorCode::RankMismatch, "truncation rank mismatch");
  if (x.precision() < gamma) {
    fail(ErrorCode::PrecisionExceeded,
         "cannot truncate at " + gamma.str() + " beyond precision " + x.precision().str());
  }
  std::vector<Term> kept;
  for (const Term& t : x.terms()) {
    if (!(t.exponent < gamma)) break;
    kept.push_back(t);
  }
  return Series::from_terms(x.field(), x.rank(), std::move(kept), Exponent::infinity(x.rank()));
}

Series pow(const Series& x, unsigned exponent) {
  Series result = Series::integer(x.field(), x.rank(), 1);
  Series base = x;
  while (exponent) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

}  // namespace henselium
