#include "henselium/disjointness.hpp"

#include <algorithm>

#include "henselium/coarsening.hpp"
#include "henselium/error.hpp"

namespace henselium {

std::string_view drop_verdict_name(DropVerdict v) noexcept {
  return v == DropVerdict::DegreeDrop ? "DEGREE_DROP" : "INCONCLUSIVE";
}

namespace {

// d = t^-alpha, c0 = the terms of d*a of negative coarse value, y = d*a - c0.
struct Normalization {
  ConvexSubgroup delta{1, 0};
  Exponent alpha;
  Series d;
  Series c0;
  Series y;
};

Normalization normalize(const Series& a, const CofinalityReport& classification) {
  Normalization n{.delta = *classification.candidate_delta, .alpha = classification.candidate_alpha};
  n.d = Series::monomial(a.field(), -n.alpha);
  const Series da = n.d * a;
  std::vector<Term> negative;
  const Exponent zero_head = Exponent::zero(n.delta.coarse_rank());
  for (const Term& t : da.terms()) {
    if (!(project(t.exponent, n.delta) < zero_head)) break;
    negative.push_back(t);
  }
  n.c0 = Series::from_terms(a.field(), a.rank(), std::move(negative), Exponent::infinity(a.rank()));
  n.y = da - n.c0;
  return n;
}

// d^deg * f((X + c0) / d).
ValPolynomial to_normalized(const ValPolynomial& f, const Normalization& n) {
  const Series d_inv = invert(n.d, Exponent::infinity(n.d.rank()));
  const ValPolynomial x = ValPolynomial::indeterminate(f.field(), f.rank());
  const ValPolynomial inner = x.scaled(d_inv) + ValPolynomial::constant(n.c0 * d_inv);
  return f.compose(inner).scaled(pow(n.d, static_cast<unsigned>(f.degree())));
}

// d^-deg * g(d X - c0), the inverse transformation.
ValPolynomial from_normalized(const ValPolynomial& g, const Normalization& n) {
  const Series d_inv = invert(n.d, Exponent::infinity(n.d.rank()));
  const ValPolynomial x = ValPolynomial::indeterminate(g.field(), g.rank());
  const ValPolynomial inner = x.scaled(n.d) - ValPolynomial::constant(n.c0);
  return g.compose(inner).scaled(pow(d_inv, static_cast<unsigned>(g.degree())));
}

// Working precision in K v_Delta matching `precision` in K.
Exponent residue_target(const Exponent& precision, const ConvexSubgroup& delta) {
  const std::size_t j = delta.index();
  if (project(precision, delta).is_zero() && Exponent::zero(j) < tail(precision, delta)) {
    return tail(precision, delta);
  }
  return Exponent::least_positive(j).scaled(64);
}

// The constant residue coefficient of an integral rank-j series, as a rank-j
// constant.
std::optional<Series> residue_constant(const Series& y) {
  const std::size_t j = y.rank();
  if (!y.valuation().at_least(Exponent::zero(j))) return std::nullopt;
  if (y.precision() <= Exponent::zero(j)) return std::nullopt;
  return Series::constant(y.field(), j, y.coefficient(Exponent::zero(j)));
}

}  // namespace

FactorReport certify_degree_drop(const ValPolynomial& f, const HenselElement& a, const Series& shift,
                                 const Exponent& horizon, const Exponent& precision) {
  if (!f.is_monic()) fail(ErrorCode::NotMonic, "the minimal polynomial must be monic");
  f.check_compatible(a.polynomial);
  a.value.check_compatible(shift);
  if (!shift.is_exact()) fail(ErrorCode::InvalidArgument, "the shift must be an element of K");

  FactorReport report{.input_degree = f.degree(),
                      .alpha = Exponent::zero(f.rank()),
                      .precision = precision,
                      .certificate = Exponent::zero(f.rank())};
  const Series z = a.value + shift;
  const Series fz = f.evaluate(z);
  if (fz.precision() < precision) {
    fail(ErrorCode::InsufficientPrecision,
         "f(z) is only known to " + fz.precision().str() + ", short of " + precision.str());
  }
  if (fz.with_precision(precision).has_support()) {
    fail(ErrorCode::PreconditionViolated,
         "f(z) has value " + fz.valuation().str() + " below the precision " + precision.str());
  }

  // Hypothesis v(z - a) > v(a - K) on the sampled gaps.
  const std::vector<ApproximationRecord> records = sample_value_set(a.value, horizon);
  const std::vector<Exponent> gaps = gaps_of(records);
  HypothesisEvidence& hyp = report.hypothesis;
  hyp.shift_value = shift.valuation().value();
  hyp.gaps = gaps.size();
  hyp.horizon = horizon;
  if (!gaps.empty()) hyp.max_gap = *std::max_element(gaps.begin(), gaps.end());
  hyp.holds = !hyp.max_gap || *hyp.max_gap < hyp.shift_value;
  if (!hyp.holds) {
    fail(ErrorCode::HypothesisNotMet, "the sampled gap " + hyp.max_gap->str() +
                                          " is not below v(z - a) = " + hyp.shift_value.str());
  }

  const CofinalityReport classification = classify_gaps(gaps, f.rank(), horizon);
  if (!is_weakly(classification.verdict)) {
    report.note = std::string("a classifies as ") + std::string(verdict_name(classification.verdict)) +
                  "; no scaling is available";
    return report;
  }
  const Normalization n = normalize(a.value, classification);
  report.delta_used = n.delta;
  report.alpha = n.alpha;
  report.scaling_d = n.d;
  report.translation = n.c0;
  if (f.degree() < 2) {
    report.note = "a linear minimal polynomial has nothing to split";
    report.factor_degrees = {f.degree()};
    return report;
  }

  const ValPolynomial f_y = to_normalized(f, n);
  if (!f_y.is_integral()) {
    report.note = "the normalized minimal polynomial is not integral";
    return report;
  }
  const ValPolynomial f_bar = residue_polynomial(f_y, n.delta);
  const Series y_bar = residue_series(n.y, n.delta);
  const std::optional<Series> start = residue_constant(y_bar);
  if (!start) {
    report.note = "the residue of d*a is not integral";
    return report;
  }
  const Exponent target_bar = residue_target(precision, n.delta);
  std::optional<HenselResult> root;
  try {
    root = hensel_root(f_bar, *start, target_bar);
  } catch (const Error& e) {
    report.note = std::string(error_name(ErrorCode::NoResidueSplit)) + ": " + e.what();
    return report;
  }
  const ValPolynomial x = ValPolynomial::indeterminate(f.field(), n.delta.index());
  const ValPolynomial g0 = x - ValPolynomial::constant(truncate_at(root->approximant, target_bar));
  const ValPolynomial h0 = divmod_monic(f_bar, g0).first.truncated(target_bar);

  const FactorLift lift = lift_factorization(f_y, g0, h0, precision, n.delta);
  const ValPolynomial g = from_normalized(lift.g, n);
  const ValPolynomial h = from_normalized(lift.h, n);
  report.factors = {g, h};
  report.factor_degrees = {g.degree(), h.degree()};
  report.certificate = (f - g * h).min_valuation();
  const bool split = g.degree() >= 1 && h.degree() >= 1 &&
                     std::max(g.degree(), h.degree()) < f.degree() &&
                     !(report.certificate < precision);
  report.verdict = split ? DropVerdict::DegreeDrop : DropVerdict::Inconclusive;
  if (!split) report.note = "the lifted factors do not certify f to the precision";
  return report;
}

ResidueEvidence residue_membership_evidence(const HenselElement& a, const Exponent& horizon) {
  ResidueEvidence ev;
  ev.classification = classify(a.value, horizon);
  if (!is_weakly(ev.classification.verdict)) {
    ev.note = std::string("a classifies as ") + std::string(verdict_name(ev.classification.verdict));
    return ev;
  }
  const Normalization n = normalize(a.value, ev.classification);
  ev.scaled_residue = residue_series(n.y, n.delta);
  const Exponent shifted_horizon = horizon - n.alpha;
  ev.non_membership = chardist_check(n.y, n.delta, shifted_horizon);

  const ValPolynomial f_y = to_normalized(a.polynomial, n);
  const std::optional<Series> start = residue_constant(ev.scaled_residue);
  if (!start || !f_y.is_integral()) {
    ev.note = "the normalized residue is not integral";
    return ev;
  }
  const Exponent target = min(ev.non_membership.residue_horizon, ev.scaled_residue.precision());
  try {
    ev.residue_root = hensel_root(residue_polynomial(f_y, n.delta), *start, target);
  } catch (const Error& e) {
    ev.note = std::string(error_name(e.code())) + ": " + e.what();
    return ev;
  }
  ev.membership = true;
  ev.agrees = !(ev.residue_root->root - ev.scaled_residue).with_precision(target).has_support();
  return ev;
}

}  // namespace henselium
