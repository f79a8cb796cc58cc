#pragma once

// Certificates that K^h(z) has smaller degree over K^h than K(z) over K:
// for z close to an element a of the henselization, the minimal polynomial
// of z splits over K^h by Hensel lifting a residue factorization.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "henselium/diagnostics.hpp"
#include "henselium/exponent.hpp"
#include "henselium/hensel.hpp"
#include "henselium/polynomial.hpp"
#include "henselium/series.hpp"

namespace henselium {

/// An element of the henselization together with the polynomial it is a
/// Hensel root of.
struct HenselElement {
  ValPolynomial polynomial;
  Series value;
};

enum class DropVerdict { DegreeDrop, Inconclusive };
std::string_view drop_verdict_name(DropVerdict v) noexcept;

struct HypothesisEvidence {
  /// v(z - a); infinity when z = a.
  Exponent shift_value;
  std::optional<Exponent> max_gap;
  std::size_t gaps = 0;
  Exponent horizon;
  bool holds = false;
};

struct FactorReport {
  DropVerdict verdict = DropVerdict::Inconclusive;
  int input_degree = 0;
  std::vector<int> factor_degrees;
  ConvexSubgroup delta_used{1, 0};
  Exponent alpha;
  /// The scaling monomial d with v(d) = -alpha.
  Series scaling_d;
  /// The part of d*a of negative coarse value, subtracted before reducing.
  Series translation;
  Exponent precision;
  /// Smallest coefficient valuation of f - g*h.
  Exponent certificate;
  std::vector<ValPolynomial> factors;
  HypothesisEvidence hypothesis;
  std::string note;
};

/// Certifies the degree drop for z = a.value + shift with minimal polynomial
/// f over K. The hypothesis v(z - a) > v(a - K) is checked on the gaps of a
/// sampled below `horizon`; the factorization holds to `precision`.
FactorReport certify_degree_drop(const ValPolynomial& f, const HenselElement& a, const Series& shift,
                                 const Exponent& horizon, const Exponent& precision);

struct ResidueEvidence {
  CofinalityReport classification;
  Series scaled_residue;    // residue of d*a - c0
  std::optional<HenselResult> residue_root;
  bool membership = false;  // a Hensel root of the residue polynomial
  bool agrees = false;      // the residue root matches the residue of d*a
  ChardistReport non_membership;
  std::string note;
};

/// The residue of d*a is itself a Hensel root over K v_Delta (membership in
/// the residue field of K^h) and, up to the horizon, not in K v_Delta.
ResidueEvidence residue_membership_evidence(const HenselElement& a, const Exponent& horizon);

}  // namespace henselium
