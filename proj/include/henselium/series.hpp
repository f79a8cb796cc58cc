#pragma once

// Truncated iterated Laurent series with a single lexicographic precision
// bound. The valuation is the minimal stored exponent.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "henselium/coefficient.hpp"
#include "henselium/exponent.hpp"

namespace henselium {

struct Term {
  Exponent exponent;
  Coefficient coeff;

  bool operator==(const Term&) const = default;
};

/// Either an exact value (possibly infinity) or only a lower bound, when
/// nothing is known below the precision of an element.
class Valuation {
 public:
  static Valuation exact(Exponent value) { return Valuation(std::move(value), true); }
  static Valuation unknown_below(Exponent bound) { return Valuation(std::move(bound), false); }

  bool known() const noexcept { return known_; }
  /// The value; fails for unknown valuations.
  const Exponent& value() const;
  /// The value if known, otherwise the guaranteed lower bound.
  const Exponent& bound() const noexcept { return exponent_; }
  bool is_infinite() const noexcept { return known_ && exponent_.is_infinite(); }

  /// Certainly >= `e`.
  bool at_least(const Exponent& e) const { return !(exponent_ < e); }

  bool operator==(const Valuation&) const = default;
  /// "(0,1)", "inf" or ">=(0,8)".
  std::string str() const;

 private:
  Valuation(Exponent e, bool known) : exponent_(std::move(e)), known_(known) {}
  Exponent exponent_;
  bool known_;
};

class Series {
 public:
  /// Exact zero.
  Series(Field field, std::size_t rank);
  /// Exact zero of rank 0 over Q; a placeholder value.
  Series() : Series(Field::rationals(), 0) {}

  static Series zero(Field field, std::size_t rank, Exponent precision);
  static Series constant(Field field, std::size_t rank, const Coefficient& c);
  static Series integer(Field field, std::size_t rank, long value);
  static Series monomial(Field field, const Exponent& exponent, const Coefficient& c);
  static Series monomial(Field field, const Exponent& exponent);
  /// Sorts, merges equal exponents, drops zero coefficients and terms at or
  /// above `precision`.
  static Series from_terms(Field field, std::size_t rank, std::vector<Term> terms,
                           Exponent precision);

  Field field() const noexcept { return field_; }
  std::size_t rank() const noexcept { return rank_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  const Exponent& precision() const noexcept { return precision_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool has_support() const noexcept { return !terms_.empty(); }
  bool is_exact() const noexcept { return precision_.is_infinite(); }
  bool is_exact_zero() const noexcept { return terms_.empty() && is_exact(); }
  bool is_monomial() const noexcept { return terms_.size() == 1 && is_exact(); }

  Valuation valuation() const;
  const Term& leading() const;
  Coefficient coefficient(const Exponent& e) const;

  /// Lowers the precision to min(current, p), dropping terms at or above p.
  Series with_precision(const Exponent& p) const;
  /// Multiplication by the monomial with exponent `shift`; exact.
  Series shifted(const Exponent& shift) const;
  Series scaled(const Coefficient& c) const;

  Series operator-() const;
  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Series& other);

  /// Identical stored terms and precision.
  bool operator==(const Series& other) const;
  /// The difference is zero up to the common precision.
  bool agrees_with(const Series& other) const;

  void check_compatible(const Series& other) const;

 private:
  Series(Field field, std::size_t rank, std::vector<Term> sorted_terms, Exponent precision);

  friend Series operator+(const Series& x, const Series& y);
  friend Series mul_serial(const Series& x, const Series& y, const Exponent& cap);
  friend Series mul_parallel(const Series& x, const Series& y, const Exponent& cap);

  Field field_;
  std::size_t rank_;
  std::vector<Term> terms_;
  Exponent precision_;
};

Series operator+(const Series& x, const Series& y);
Series operator-(const Series& x, const Series& y);
Series operator*(const Series& x, const Series& y);

/// Precision of a product: min(vx + prec_y, vy + prec_x), reading an unknown
/// valuation as the precision itself.
Exponent product_precision(const Series& x, const Series& y);

/// Reference Cauchy product, known to min(product_precision, cap).
Series mul_serial(const Series& x, const Series& y, const Exponent& cap);
Series mul_serial(const Series& x, const Series& y);
/// OpenMP Cauchy product; identical results to mul_serial.
Series mul_parallel(const Series& x, const Series& y, const Exponent& cap);
Series mul_parallel(const Series& x, const Series& y);
/// x * y known only to `cap`; terms at or beyond it are never formed.
Series mul_truncated(const Series& x, const Series& y, const Exponent& cap);

/// x^-1 to `target` (or less, if x itself is not known well enough). The
/// leading monomial is factored out and the unit part expanded as a
/// geometric series, summed by repeated squaring.
Series invert(const Series& x, const Exponent& target);
Series expand_rational(const Series& numer, const Series& denom, const Exponent& target);

/// The exact element of K formed by the terms below `gamma`.
Series truncate_at(const Series& x, const Exponent& gamma);

Series pow(const Series& x, unsigned exponent);

}  // namespace henselium
