#include "henselium/coefficient.hpp"

#include <charconv>

#include "henselium/error.hpp"

namespace henselium {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

void require_same_field(const Coefficient& a, const Coefficient& b) {
  if (!(a.field() == b.field())) {
    fail(ErrorCode::FieldMismatch,
         "coefficient field mismatch: " + a.field().str() + " vs " + b.field().str());
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return Field(p);
}

std::string Field::str() const { return is_rational() ? "q" : "fp:" + std::to_string(modulus_); }

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.starts_with("fp:")) {
    std::uint64_t p = 0;
    auto digits = text.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime(p);
  }
  fail(ErrorCode::SyntaxError, "field must be 'q' or 'fp:<prime>', got '" + std::string(text) + "'");
}

Coefficient Coefficient::zero(Field field) { return from_integer(field, 0); }

Coefficient Coefficient::from_integer(Field field, long value) {
  if (field.is_rational()) return Coefficient(mpq_class(value));
  return Coefficient(Residue{reduce(mpz_class(value), field.modulus()), field.modulus()});
}

Coefficient Coefficient::from_rational(Field field, const mpq_class& raw) {
  mpq_class value = raw;
  value.canonicalize();
  if (field.is_rational()) return Coefficient(value);
  const std::uint64_t p = field.modulus();
  const std::uint64_t den = reduce(value.get_den(), p);
  if (den == 0) {
    fail(ErrorCode::InvalidArgument,
         "denominator of " + value.get_str() + " vanishes modulo " + std::to_string(p));
  }
  const std::uint64_t num = reduce(value.get_num(), p);
  return Coefficient(Residue{mul_mod(num, pow_mod(den, p - 2, p), p), p});
}

Field Coefficient::field() const {
  if (const auto* r = residue()) return Field(r->modulus);
  return Field::rationals();
}

bool Coefficient::is_zero() const {
  if (const auto* q = rational()) return sgn(*q) == 0;
  return residue()->value == 0;
}

bool Coefficient::is_one() const {
  if (const auto* q = rational()) return *q == 1;
  return residue()->value == 1 % residue()->modulus;
}

Coefficient Coefficient::operator+(const Coefficient& other) const {
  Coefficient out = *this;
  out += other;
  return out;
}

Coefficient Coefficient::operator-(const Coefficient& other) const {
  Coefficient out = *this;
  out -= other;
  return out;
}

Coefficient Coefficient::operator*(const Coefficient& other) const {
  Coefficient out = *this;
  out *= other;
  return out;
}

Coefficient Coefficient::operator/(const Coefficient& other) const { return *this * other.inverse(); }

Coefficient Coefficient::operator-() const {
  if (const auto* q = rational()) return Coefficient(mpq_class(-*q));
  const Residue& r = *residue();
  return Coefficient(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  if (value_.index() != other.value_.index()) require_same_field(*this, other);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += *other.rational();
    return *this;
  }
  Residue& r = std::get<Residue>(value_);
  const Residue& o = *other.residue();
  if (r.modulus != o.modulus) require_same_field(*this, other);
  r.value = static_cast<std::uint64_t>((static_cast<u128>(r.value) + o.value) % r.modulus);
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) { return *this += -other; }

Coefficient& Coefficient::operator*=(const Coefficient& other) {
  if (value_.index() != other.value_.index()) require_same_field(*this, other);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= *other.rational();
    return *this;
  }
  Residue& r = std::get<Residue>(value_);
  const Residue& o = *other.residue();
  if (r.modulus != o.modulus) require_same_field(*this, other);
  r.value = mul_mod(r.value, o.value, r.modulus);
  return *this;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) fail(ErrorCode::ZeroLeadingTerm, "division by a zero coefficient");
  if (const auto* q = rational()) return Coefficient(mpq_class(1 / *q));
  const Residue& r = *residue();
  return Coefficient(Residue{pow_mod(r.value, r.modulus - 2, r.modulus), r.modulus});
}

Coefficient Coefficient::times(long n) const { return *this * from_integer(field(), n); }

bool Coefficient::operator==(const Coefficient& other) const {
  if (value_.index() != other.value_.index()) return false;
  if (const auto* q = rational()) return *q == *other.rational();
  return *residue() == *other.residue();
}

std::string Coefficient::str() const {
  if (const auto* q = rational()) return q->get_str();
  return std::to_string(residue()->value);
}

}  // namespace henselium
