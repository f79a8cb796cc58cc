#pragma once

// Text syntax for series and polynomials, and the session that fixes the
// variables and coefficient field they are read in.
//
//   expr    := ["+"|"-"] term (("+"|"-") term)*
//   term    := factor ("*" factor)*
//   factor  := primary ["^" ["-"] int]
//   primary := int ["/" int] | variable | "X" | "Y" | "(" expr ")" | "O(" expr ")"
//
// Negative powers apply to session variables only. "X" is the polynomial
// indeterminate, "Y" stands for an element adjoined in a tower, and O(m)
// marks the precision: terms at or above the monomial m are unknown.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "henselium/coefficient.hpp"
#include "henselium/exponent.hpp"
#include "henselium/polynomial.hpp"
#include "henselium/series.hpp"

namespace henselium {

struct Session {
  /// Most significant first.
  std::vector<std::string> variables;
  Field field = Field::rationals();
  Exponent precision;
  Exponent horizon;

  std::size_t rank() const noexcept { return variables.size(); }

  /// Validates names and ranks; missing precision and horizon default to
  /// 64 and 50 in the last variable.
  static Session make(std::vector<std::string> variables, Field field,
                      std::string_view precision = {}, std::string_view horizon = {});
  /// Comma-separated names.
  static std::vector<std::string> split_variables(std::string_view text);

  Exponent parse_exponent(std::string_view text) const;
};

/// A polynomial in X and Y with series coefficients, keyed by (deg X, deg Y).
using Expression = std::map<std::pair<unsigned, unsigned>, Series>;

Expression parse_expression(std::string_view text, const Session& session, bool allow_x = true,
                            bool allow_y = false);
Series parse_series(std::string_view text, const Session& session);
ValPolynomial parse_polynomial(std::string_view text, const Session& session);
/// Coefficients of X^k as polynomials in Y, for tower polynomials.
std::vector<ValPolynomial> parse_tower_polynomial(std::string_view text, const Session& session);

/// "3/4*s^2*t^-1 - t + O(t^8)".
std::string format_series(const Series& x, const std::vector<std::string>& variables);
/// "X^2 - (2*s + 1)*X + (s^2 + s - t)".
std::string format_polynomial(const ValPolynomial& f, const std::vector<std::string>& variables);
/// A monomial "s^2*t^-1", or "1" for the zero exponent.
std::string format_monomial(const Exponent& e, const std::vector<std::string>& variables);

}  // namespace henselium
