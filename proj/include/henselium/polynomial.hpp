#pragma once

// Univariate polynomials over truncated series.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "henselium/exponent.hpp"
#include "henselium/series.hpp"

namespace henselium {

class ValPolynomial {
 public:
  /// The zero polynomial.
  ValPolynomial(Field field, std::size_t rank);
  /// Coefficients by degree; trailing coefficients without support are
  /// dropped.
  static ValPolynomial from_coefficients(Field field, std::size_t rank, std::vector<Series> coeffs);
  static ValPolynomial constant(const Series& c);
  /// c * X^degree.
  static ValPolynomial monomial(const Series& c, std::size_t degree);
  /// The indeterminate X.
  static ValPolynomial indeterminate(Field field, std::size_t rank);

  Field field() const noexcept { return field_; }
  std::size_t rank() const noexcept { return rank_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const Series> coefficients() const noexcept { return coeffs_; }
  /// Zero (exact) above the degree.
  Series coefficient(std::size_t i) const;
  const Series& leading() const;

  /// Leading coefficient is exactly 1.
  bool is_monic() const;
  /// Every coefficient has valuation >= 0 (unknown valuations count when
  /// their bound is >= 0).
  bool is_integral() const;
  /// Every coefficient has finite support and infinite precision.
  bool is_exact() const;

  Series evaluate(const Series& c) const;
  ValPolynomial derivative() const;
  /// f(g(X)).
  ValPolynomial compose(const ValPolynomial& g) const;
  /// Each coefficient multiplied by c.
  ValPolynomial scaled(const Series& c) const;
  ValPolynomial with_precision(const Exponent& p) const;
  /// Exact polynomial of the coefficient truncations below gamma; a
  /// coefficient known only to precision below gamma is truncated there.
  ValPolynomial truncated(const Exponent& gamma) const;
  /// Smallest coefficient valuation bound; infinity for the zero polynomial.
  Exponent min_valuation() const;
  /// Every coefficient is certainly of valuation >= gamma.
  bool all_at_least(const Exponent& gamma) const;

  ValPolynomial operator-() const;
  bool operator==(const ValPolynomial& other) const;

  void check_compatible(const ValPolynomial& other) const;

 private:
  ValPolynomial(Field field, std::size_t rank, std::vector<Series> coeffs);
  void normalize();

  Field field_;
  std::size_t rank_;
  std::vector<Series> coeffs_;
};

ValPolynomial operator+(const ValPolynomial& f, const ValPolynomial& g);
ValPolynomial operator-(const ValPolynomial& f, const ValPolynomial& g);
ValPolynomial operator*(const ValPolynomial& f, const ValPolynomial& g);

/// f = q*g + r with deg r < deg g, for monic g.
std::pair<ValPolynomial, ValPolynomial> divmod_monic(const ValPolynomial& f, const ValPolynomial& g);

/// Coefficientwise residue_series.
ValPolynomial residue_polynomial(const ValPolynomial& f, const ConvexSubgroup& delta);
/// Coefficientwise embed_residue.
ValPolynomial embed_polynomial(const ValPolynomial& f, const ConvexSubgroup& delta);

struct ExtendedGcd {
  ValPolynomial gcd;  // monic
  ValPolynomial s;
  ValPolynomial t;    // s*a + t*b = gcd
};

/// Euclid over the field of rank-j series, with leading coefficients
/// inverted to `working` and all intermediates truncated there. A
/// remainder without support counts as zero.
ExtendedGcd ext_gcd(const ValPolynomial& a, const ValPolynomial& b, const Exponent& working);

}  // namespace henselium
