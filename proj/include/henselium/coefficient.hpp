#pragma once

// Coefficient fields: exact rationals (GMP) or a word-sized prime field.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace henselium {

/// Q when the modulus is 0, otherwise F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  /// 0 for Q, p for F_p.
  std::uint64_t characteristic() const noexcept { return modulus_; }

  bool operator==(const Field&) const = default;

  /// "q" or "fp:<p>".
  std::string str() const;
  static Field parse(std::string_view text);

 private:
  friend class Coefficient;
  explicit Field(std::uint64_t modulus) : modulus_(modulus) {}
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n);

class Coefficient {
 public:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
    bool operator==(const Residue&) const = default;
  };

  static Coefficient zero(Field field);
  static Coefficient one(Field field) { return from_integer(field, 1); }
  static Coefficient from_integer(Field field, long value);
  /// Reduces mod p for prime fields; fails when p divides the denominator.
  static Coefficient from_rational(Field field, const mpq_class& value);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Coefficient operator+(const Coefficient& other) const;
  Coefficient operator-(const Coefficient& other) const;
  Coefficient operator*(const Coefficient& other) const;
  Coefficient operator/(const Coefficient& other) const;
  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient& operator*=(const Coefficient& other);
  Coefficient inverse() const;
  /// Multiplication by an integer, as in formal derivatives.
  Coefficient times(long n) const;

  bool operator==(const Coefficient& other) const;

  const mpq_class* rational() const { return std::get_if<mpq_class>(&value_); }
  const Residue* residue() const { return std::get_if<Residue>(&value_); }

  /// "3", "-2/5" for Q; the canonical representative in [0, p) for F_p.
  std::string str() const;

 private:
  explicit Coefficient(mpq_class value) : value_(std::move(value)) {}
  explicit Coefficient(Residue value) : value_(value) {}

  std::variant<mpq_class, Residue> value_;
};

}  // namespace henselium
