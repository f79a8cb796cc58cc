#include "henselium/hensel.hpp"

#include "henselium/coarsening.hpp"
#include "henselium/error.hpp"

namespace henselium {

namespace {

void require_monic_integral(const ValPolynomial& f) {
  if (!f.is_monic()) fail(ErrorCode::NotMonic, "the polynomial must be monic");
  if (!f.is_integral()) fail(ErrorCode::NotIntegral, "the polynomial must have integral coefficients");
}

Series exact_part(const Series& x) { return truncate_at(x, x.precision()); }

// v f(c), failing when f(c) has no known support.
Exponent value_at(const Series& fc) {
  if (!fc.has_support()) {
    if (fc.is_exact()) return Exponent::infinity(fc.rank());
    fail(ErrorCode::InsufficientPrecision,
         "f(c) vanishes up to " + fc.precision().str() + "; its valuation is unknown");
  }
  return fc.valuation().value();
}

void require_hypotheses(const ValPolynomial& f, const Series& c, const Exponent& vfc) {
  const Exponent zero = Exponent::zero(f.rank());
  if (!(zero < vfc)) {
    fail(ErrorCode::NotApproximateRoot, "v f(c) = " + vfc.str() + " is not positive");
  }
  const Series fpc = f.derivative().evaluate(c);
  if (!fpc.has_support() || fpc.valuation().value() != zero) {
    fail(ErrorCode::NotSimpleRoot,
         "v f'(c) = " + fpc.valuation().str() + " is not 0; the residue root is not simple");
  }
}

// c - f(c) * f'(c)^-1 where the quotient is known to `working`.
Series raw_step(const ValPolynomial& f, const Series& c, const Series& fc, const Exponent& vfc,
                const Exponent& working) {
  const Series fpc = f.derivative().evaluate(c);
  const Series correction = mul_truncated(fc, invert(fpc, working - vfc), working);
  return (c - correction).with_precision(working);
}

}  // namespace

Series newton_step(const ValPolynomial& f, const Series& c) {
  const Series fc = f.evaluate(c);
  const Exponent vfc = value_at(fc);
  if (vfc.is_infinite()) return c;
  return newton_step(f, c, vfc.scaled(2));
}

Series newton_step(const ValPolynomial& f, const Series& c, const Exponent& working) {
  require_monic_integral(f);
  const Series fc = f.evaluate(c);
  const Exponent vfc = value_at(fc);
  if (vfc.is_infinite()) return c;
  require_hypotheses(f, c, vfc);
  return raw_step(f, c, fc, vfc, working);
}

HenselResult hensel_root(const ValPolynomial& f, const Series& c0, const Exponent& target,
                         std::size_t iteration_cap) {
  require_monic_integral(f);
  if (c0.rank() != f.rank() || target.rank() != f.rank()) {
    fail(ErrorCode::RankMismatch, "start value or target rank does not match the polynomial");
  }
  HenselResult result{.approximant = exact_part(c0),
                      .root = Series(f.field(), f.rank()),
                      .target = target,
                      .achieved = Exponent::infinity(f.rank())};
  Series c = result.approximant;
  for (std::size_t k = 0;; ++k) {
    const Series fc = f.evaluate(c);
    if (!fc.has_support() && !fc.is_exact() && !(fc.precision() < target)) {
      // f(c) vanishes to at least the target: certified without a value.
      result.iterates.push_back(c);
      result.achieved = fc.precision();
      break;
    }
    const Exponent vfc = value_at(fc);
    if (k == 0) {
      if (vfc.is_finite()) {
        require_hypotheses(f, c, vfc);
        if (!multiple_reaches(vfc, target)) {
          fail(ErrorCode::PrecisionUnreachable,
               "doubling from " + vfc.str() + " never reaches " + target.str());
        }
      }
    } else if (vfc < result.trace.back().scaled(2)) {
      fail(ErrorCode::NonTermination, "value doubling violated: " + result.trace.back().str() +
                                          " -> " + vfc.str());
    }
    result.trace.push_back(vfc);
    result.iterates.push_back(c);
    if (!(vfc < target)) {
      result.achieved = vfc;
      break;
    }
    if (k >= iteration_cap) {
      fail(ErrorCode::NonTermination,
           "no convergence to " + target.str() + " within " + std::to_string(iteration_cap) + " steps");
    }
    const Exponent working = max(target, vfc.scaled(2));
    const Series next = raw_step(f, c, fc, vfc, working);
    Series c_next = truncate_at(next, min(working, next.precision()));
    const Valuation gap = (c_next - c).valuation();
    if (!gap.known() || gap.value() != vfc) {
      fail(ErrorCode::NonTermination,
           "consecutive iterates differ by " + gap.str() + ", expected " + vfc.str());
    }
    result.steps.push_back(gap.value());
    c = std::move(c_next);
  }
  result.approximant = c;
  // f(c) = 0 exactly: c is the root itself.
  result.root = result.achieved.is_infinite() ? c : c.with_precision(min(target, result.achieved));
  return result;
}

namespace {

// Drops terms of degree above `degree` and pins the leading coefficient to 1.
ValPolynomial monic_part(const ValPolynomial& p, std::size_t degree) {
  std::vector<Series> c;
  for (std::size_t i = 0; i < degree; ++i) c.push_back(p.coefficient(i));
  c.push_back(Series::integer(p.field(), p.rank(), 1));
  return ValPolynomial::from_coefficients(p.field(), p.rank(), std::move(c));
}

// The residue ring computations run to the Delta-part of the target, or a
// fixed depth when the target lies outside Delta.
Exponent residue_working(const Exponent& target, const ConvexSubgroup& delta) {
  const std::size_t j = delta.index();
  if (j == 0) return Exponent::infinity(0);
  const Exponent head = project(target, delta);
  const Exponent zero_head = Exponent::zero(delta.coarse_rank());
  const Exponent fallback = Exponent::least_positive(j).scaled(64);
  if (head == zero_head && Exponent::zero(j) < tail(target, delta)) return tail(target, delta);
  return fallback;
}

}  // namespace

FactorLift lift_factorization(const ValPolynomial& f, const ValPolynomial& g0,
                              const ValPolynomial& h0, const Exponent& target,
                              const ConvexSubgroup& delta, std::size_t iteration_cap) {
  require_monic_integral(f);
  if (f.rank() != delta.rank() || target.rank() != f.rank()) {
    fail(ErrorCode::RankMismatch, "polynomial, target and subgroup ranks disagree");
  }
  if (g0.rank() != delta.index() || h0.rank() != delta.index()) {
    fail(ErrorCode::RankMismatch, "residue factors must have rank " + std::to_string(delta.index()));
  }
  if (!g0.is_monic() || !h0.is_monic()) fail(ErrorCode::NotMonic, "residue factors must be monic");
  if (g0.degree() < 1 || h0.degree() < 1) {
    fail(ErrorCode::InvalidArgument, "residue factors must be nonconstant");
  }
  const ValPolynomial f_bar = residue_polynomial(f, delta);
  const Exponent working = residue_working(target, delta);
  const ValPolynomial mismatch = (g0 * h0 - f_bar).truncated(working);
  if (!mismatch.is_zero() || g0.degree() + h0.degree() != f.degree()) {
    fail(ErrorCode::ResidueMismatch, "g0*h0 differs from the residue of f");
  }

  ExtendedGcd bezout = ext_gcd(g0, h0, working);
  if (bezout.gcd.degree() >= 1) {
    fail(ErrorCode::NotCoprime, "g0 and h0 share a factor of degree " +
                                    std::to_string(bezout.gcd.degree()));
  }
  // Reduce the cofactors so that deg s < deg h0 and deg t < deg g0.
  auto [q0, s_red] = divmod_monic(bezout.s, h0);
  ValPolynomial t_red = (bezout.t + q0 * g0).truncated(working);
  s_red = s_red.truncated(working);

  const std::size_t deg_g = static_cast<std::size_t>(g0.degree());
  const std::size_t deg_h = static_cast<std::size_t>(h0.degree());
  ValPolynomial g = embed_polynomial(g0.truncated(working), delta);
  ValPolynomial h = embed_polynomial(h0.truncated(working), delta);
  ValPolynomial s = embed_polynomial(s_red, delta);
  ValPolynomial t = embed_polynomial(t_red, delta);
  const ValPolynomial one = ValPolynomial::constant(Series::integer(f.field(), f.rank(), 1));

  // Coefficients of s, t may have negative value; truncating deeper keeps
  // products with them sound down to the target.
  const Exponent zero = Exponent::zero(f.rank());
  const auto depth = [&] {
    return target - min(zero, min(s.min_valuation(), t.min_valuation()));
  };

  FactorLift lift{.g = g, .h = h, .target = target, .certificate = zero};
  bool reach_checked = false;
  for (std::size_t k = 0;; ++k) {
    const ValPolynomial e = f - g * h;
    const Exponent ve = e.min_valuation();
    lift.trace.push_back(ve);
    if (!(ve < target)) {
      lift.certificate = ve;
      break;
    }
    for (const Series& c : e.coefficients()) {
      if (!c.has_support() && c.precision() < target) {
        fail(ErrorCode::InsufficientPrecision,
             "f - g*h is only known to " + c.precision().str() + ", short of " + target.str());
      }
    }
    if (!(zero < ve)) {
      fail(ErrorCode::ResidueMismatch, "f - g*h has value " + ve.str() + ", which is not positive");
    }
    if (!reach_checked) {
      if (!multiple_reaches(ve, target)) {
        fail(ErrorCode::PrecisionUnreachable,
             "doubling from " + ve.str() + " never reaches " + target.str());
      }
      reach_checked = true;
    }
    if (k >= iteration_cap) {
      fail(ErrorCode::NonTermination, "factor lifting did not reach " + target.str());
    }
    const Exponent w = depth();
    const ValPolynomial ee = e.truncated(w);
    auto [q, r] = divmod_monic((s * ee).truncated(w), h);
    const ValPolynomial g_next = monic_part((g + t * ee + q * g).truncated(w), deg_g);
    const ValPolynomial h_next = monic_part((h + r).truncated(w), deg_h);
    const ValPolynomial b = (s * g_next + t * h_next - one).truncated(w);
    auto [c, d] = divmod_monic((s * b).truncated(w), h_next);
    s = (s - d).truncated(w);
    t = (t - t * b - c * g_next).truncated(w);
    g = g_next;
    h = h_next;
  }
  lift.g = g;
  lift.h = h;
  return lift;
}

}  // namespace henselium
