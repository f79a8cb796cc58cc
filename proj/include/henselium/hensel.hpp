#pragma once

// Newton iteration for simple roots and quadratic lifting of coprime
// factorizations.

#include <cstddef>
#include <vector>

#include "henselium/exponent.hpp"
#include "henselium/polynomial.hpp"
#include "henselium/series.hpp"

namespace henselium {

/// c - f(c)/f'(c), known to precision `working`. The default working
/// precision is 2 v f(c), which is what the step guarantees.
Series newton_step(const ValPolynomial& f, const Series& c);
Series newton_step(const ValPolynomial& f, const Series& c, const Exponent& working);

struct HenselResult {
  /// The final iterate, an exact element of K.
  Series approximant;
  /// The approximant read as the true root, known to the target precision.
  Series root;
  /// v f(c_k) for every iterate c_0, c_1, ...
  std::vector<Exponent> trace;
  /// v(c_{k+1} - c_k) for consecutive iterates.
  std::vector<Exponent> steps;
  /// The iterates c_0, c_1, ..., all exact.
  std::vector<Series> iterates;
  Exponent target;
  /// v f(approximant), or the precision of f(approximant) when it has no
  /// known support.
  Exponent achieved;
};

inline constexpr std::size_t kDefaultIterationCap = 64;

/// Iterates newton_step from c0 until v f(c) >= target. f must be monic and
/// integral, with v f(c0) > 0 and v f'(c0) = 0.
HenselResult hensel_root(const ValPolynomial& f, const Series& c0, const Exponent& target,
                         std::size_t iteration_cap = kDefaultIterationCap);

struct FactorLift {
  ValPolynomial g;
  ValPolynomial h;
  Exponent target;
  /// Smallest valuation bound among the coefficients of f - g*h.
  Exponent certificate;
  /// Smallest coefficient valuation of f - g*h before each lifting step.
  std::vector<Exponent> trace;
};

/// Lifts residue(f) = g0*h0 over K v_Delta to f = g*h modulo valuation
/// `target`. g0, h0 are rank-j polynomials, monic, nonconstant and coprime.
FactorLift lift_factorization(const ValPolynomial& f, const ValPolynomial& g0,
                              const ValPolynomial& h0, const Exponent& target,
                              const ConvexSubgroup& delta,
                              std::size_t iteration_cap = kDefaultIterationCap);

}  // namespace henselium
