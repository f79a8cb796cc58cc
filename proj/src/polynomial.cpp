#include "henselium/polynomial.hpp"

#include <algorithm>

#include "henselium/coarsening.hpp"
#include "henselium/error.hpp"

namespace henselium {

ValPolynomial::ValPolynomial(Field field, std::size_t rank) : field_(field), rank_(rank) {}

ValPolynomial::ValPolynomial(Field field, std::size_t rank, std::vector<Series> coeffs)
    : field_(field), rank_(rank), coeffs_(std::move(coeffs)) {
  normalize();
}

void ValPolynomial::normalize() {
  while (!coeffs_.empty() && !coeffs_.back().has_support()) coeffs_.pop_back();
}

ValPolynomial ValPolynomial::from_coefficients(Field field, std::size_t rank,
                                               std::vector<Series> coeffs) {
  for (const Series& c : coeffs) {
    if (c.rank() != rank) fail(ErrorCode::RankMismatch, "polynomial coefficient rank mismatch");
    if (!(c.field() == field)) fail(ErrorCode::FieldMismatch, "polynomial coefficient field mismatch");
  }
  return ValPolynomial(field, rank, std::move(coeffs));
}

ValPolynomial ValPolynomial::constant(const Series& c) {
  return ValPolynomial(c.field(), c.rank(), {c});
}

ValPolynomial ValPolynomial::monomial(const Series& c, std::size_t degree) {
  std::vector<Series> coeffs(degree + 1, Series(c.field(), c.rank()));
  coeffs[degree] = c;
  return ValPolynomial(c.field(), c.rank(), std::move(coeffs));
}

ValPolynomial ValPolynomial::indeterminate(Field field, std::size_t rank) {
  return monomial(Series::integer(field, rank, 1), 1);
}

Series ValPolynomial::coefficient(std::size_t i) const {
  if (i < coeffs_.size()) return coeffs_[i];
  return Series(field_, rank_);
}

const Series& ValPolynomial::leading() const {
  if (coeffs_.empty()) fail(ErrorCode::ZeroLeadingTerm, "the zero polynomial has no leading coefficient");
  return coeffs_.back();
}

bool ValPolynomial::is_monic() const {
  if (coeffs_.empty()) return false;
  const Series& lead = coeffs_.back();
  return lead.is_monomial() && lead.terms().front().exponent.is_zero() &&
         lead.terms().front().coeff.is_one();
}

bool ValPolynomial::is_integral() const { return all_at_least(Exponent::zero(rank_)); }

bool ValPolynomial::is_exact() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Series& c) { return c.is_exact(); });
}

Series ValPolynomial::evaluate(const Series& c) const {
  if (c.rank() != rank_) fail(ErrorCode::RankMismatch, "evaluation point rank mismatch");
  if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "evaluation point field mismatch");
  if (coeffs_.empty()) return Series(field_, rank_);
  Series acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * c + coeffs_[i];
  return acc;
}

ValPolynomial ValPolynomial::derivative() const {
  std::vector<Series> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(coeffs_[i].scaled(Coefficient::from_integer(field_, static_cast<long>(i))));
  }
  return ValPolynomial(field_, rank_, std::move(out));
}

ValPolynomial ValPolynomial::compose(const ValPolynomial& g) const {
  check_compatible(g);
  ValPolynomial acc(field_, rank_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * g + constant(coeffs_[i]);
  return acc;
}

ValPolynomial ValPolynomial::scaled(const Series& c) const {
  std::vector<Series> out;
  out.reserve(coeffs_.size());
  for (const Series& a : coeffs_) out.push_back(a * c);
  return ValPolynomial(field_, rank_, std::move(out));
}

ValPolynomial ValPolynomial::with_precision(const Exponent& p) const {
  std::vector<Series> out;
  out.reserve(coeffs_.size());
  for (const Series& a : coeffs_) out.push_back(a.with_precision(p));
  return ValPolynomial(field_, rank_, std::move(out));
}

ValPolynomial ValPolynomial::truncated(const Exponent& gamma) const {
  std::vector<Series> out;
  out.reserve(coeffs_.size());
  for (const Series& a : coeffs_) out.push_back(truncate_at(a, min(gamma, a.precision())));
  return ValPolynomial(field_, rank_, std::move(out));
}

Exponent ValPolynomial::min_valuation() const {
  Exponent m = Exponent::infinity(rank_);
  for (const Series& a : coeffs_) m = min(m, a.valuation().bound());
  return m;
}

bool ValPolynomial::all_at_least(const Exponent& gamma) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](const Series& a) { return a.valuation().at_least(gamma); });
}

ValPolynomial ValPolynomial::operator-() const {
  std::vector<Series> out;
  out.reserve(coeffs_.size());
  for (const Series& a : coeffs_) out.push_back(-a);
  return ValPolynomial(field_, rank_, std::move(out));
}

bool ValPolynomial::operator==(const ValPolynomial& other) const {
  return field_ == other.field_ && rank_ == other.rank_ && coeffs_ == other.coeffs_;
}

void ValPolynomial::check_compatible(const ValPolynomial& other) const {
  if (rank_ != other.rank_) fail(ErrorCode::RankMismatch, "polynomial rank mismatch");
  if (!(field_ == other.field_)) fail(ErrorCode::FieldMismatch, "polynomial field mismatch");
}

ValPolynomial operator+(const ValPolynomial& f, const ValPolynomial& g) {
  f.check_compatible(g);
  const std::size_t n = std::max(f.coefficients().size(), g.coefficients().size());
  std::vector<Series> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f.coefficient(i) + g.coefficient(i));
  return ValPolynomial::from_coefficients(f.field(), f.rank(), std::move(out));
}

ValPolynomial operator-(const ValPolynomial& f, const ValPolynomial& g) { return f + (-g); }

ValPolynomial operator*(const ValPolynomial& f, const ValPolynomial& g) {
  f.check_compatible(g);
  if (f.is_zero() || g.is_zero()) return ValPolynomial(f.field(), f.rank());
  const auto a = f.coefficients();
  const auto b = g.coefficients();
  std::vector<Series> out(a.size() + b.size() - 1, Series(f.field(), f.rank()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return ValPolynomial::from_coefficients(f.field(), f.rank(), std::move(out));
}

std::pair<ValPolynomial, ValPolynomial> divmod_monic(const ValPolynomial& f, const ValPolynomial& g) {
  f.check_compatible(g);
  if (!g.is_monic()) fail(ErrorCode::NotMonic, "division requires a monic divisor");
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  std::vector<Series> rem(f.coefficients().begin(), f.coefficients().end());
  if (rem.size() <= dg) return {ValPolynomial(f.field(), f.rank()), f};
  std::vector<Series> quot(rem.size() - dg, Series(f.field(), f.rank()));
  const auto gc = g.coefficients();
  for (std::size_t k = rem.size(); k-- > dg;) {
    const Series q = rem[k];
    quot[k - dg] = q;
    if (!q.has_support() && q.is_exact()) continue;
    for (std::size_t i = 0; i < dg; ++i) rem[k - dg + i] -= q * gc[i];
    rem[k] = Series(f.field(), f.rank());
  }
  rem.resize(dg, Series(f.field(), f.rank()));
  return {ValPolynomial::from_coefficients(f.field(), f.rank(), std::move(quot)),
          ValPolynomial::from_coefficients(f.field(), f.rank(), std::move(rem))};
}

ValPolynomial residue_polynomial(const ValPolynomial& f, const ConvexSubgroup& delta) {
  std::vector<Series> out;
  for (const Series& a : f.coefficients()) out.push_back(residue_series(a, delta));
  return ValPolynomial::from_coefficients(f.field(), delta.index(), std::move(out));
}

ValPolynomial embed_polynomial(const ValPolynomial& f, const ConvexSubgroup& delta) {
  std::vector<Series> out;
  for (const Series& a : f.coefficients()) out.push_back(embed_residue(a, delta));
  return ValPolynomial::from_coefficients(f.field(), delta.rank(), std::move(out));
}

namespace {

// Exact inverse of the leading coefficient up to `working`.
Series leading_inverse(const ValPolynomial& p, const Exponent& working) {
  const Series inv = invert(p.leading(), working);
  return truncate_at(inv, min(working, inv.precision()));
}

// p * inv with the leading coefficient pinned to 1.
ValPolynomial pin_monic(const ValPolynomial& p, const Series& inv, const Exponent& working) {
  std::vector<Series> c;
  for (const Series& a : p.coefficients()) {
    const Series prod = a * inv;
    c.push_back(truncate_at(prod, min(working, prod.precision())));
  }
  c.back() = Series::integer(p.field(), p.rank(), 1);
  return ValPolynomial::from_coefficients(p.field(), p.rank(), std::move(c));
}

}  // namespace

ExtendedGcd ext_gcd(const ValPolynomial& a, const ValPolynomial& b, const Exponent& working) {
  a.check_compatible(b);
  if (working.rank() != a.rank()) fail(ErrorCode::RankMismatch, "working precision rank mismatch");
  const Field field = a.field();
  const std::size_t rank = a.rank();
  const ValPolynomial one = ValPolynomial::constant(Series::integer(field, rank, 1));
  const ValPolynomial zero(field, rank);

  ValPolynomial r0 = a.truncated(working), r1 = b.truncated(working);
  ValPolynomial s0 = one, s1 = zero, t0 = zero, t1 = one;
  if (r0.is_zero() && r1.is_zero()) fail(ErrorCode::InvalidArgument, "gcd of two zero polynomials");
  while (!r1.is_zero()) {
    const Series inv = leading_inverse(r1, working);
    auto [q, r] = divmod_monic(r0, pin_monic(r1, inv, working));
    q = q.scaled(inv).truncated(working);
    r0 = std::exchange(r1, r.truncated(working));
    s0 = std::exchange(s1, (s0 - q * s1).truncated(working));
    t0 = std::exchange(t1, (t0 - q * t1).truncated(working));
  }
  const Series inv = leading_inverse(r0, working);
  return {pin_monic(r0, inv, working), s0.scaled(inv).truncated(working),
          t0.scaled(inv).truncated(working)};
}

}  // namespace henselium
