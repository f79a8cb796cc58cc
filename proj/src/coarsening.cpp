#include "henselium/coarsening.hpp"

#include "henselium/error.hpp"

namespace henselium {

namespace {

void require_rank(const Series& x, const ConvexSubgroup& delta) {
  if (x.rank() != delta.rank()) {
    fail(ErrorCode::RankMismatch, "series of rank " + std::to_string(x.rank()) + " against " +
                                      delta.str() + " of rank " + std::to_string(delta.rank()));
  }
}

}  // namespace

Valuation coarse_value(const Series& x, const ConvexSubgroup& delta) {
  require_rank(x, delta);
  const Valuation v = x.valuation();
  if (v.known()) return Valuation::exact(project(v.value(), delta));
  return Valuation::unknown_below(project(v.bound(), delta));
}

Series residue_series(const Series& x, const ConvexSubgroup& delta) {
  require_rank(x, delta);
  const Valuation coarse = coarse_value(x, delta);
  const Exponent zero_head = Exponent::zero(delta.coarse_rank());
  if (coarse.known() && coarse.value() < zero_head) {
    fail(ErrorCode::NegativeCoarseValue,
         "coarse value " + coarse.value().str() + " is negative; the residue is undefined");
  }
  const Exponent precision_head = project(x.precision(), delta);
  if (precision_head < zero_head) {
    fail(ErrorCode::InsufficientPrecision,
         "nothing is known about x at coarse value 0 (precision " + x.precision().str() + ")");
  }
  const Exponent residue_precision =
      zero_head < precision_head ? Exponent::infinity(delta.index()) : tail(x.precision(), delta);

  std::vector<Term> kept;
  for (const Term& t : x.terms()) {
    const Exponent head = project(t.exponent, delta);
    if (head < zero_head) continue;
    if (zero_head < head) break;
    kept.push_back({tail(t.exponent, delta), t.coeff});
  }
  return Series::from_terms(x.field(), delta.index(), std::move(kept), residue_precision);
}

Series embed_residue(const Series& residue, const ConvexSubgroup& delta) {
  if (residue.rank() != delta.index()) {
    fail(ErrorCode::RankMismatch, "residue rank does not match " + delta.str());
  }
  std::vector<Term> lifted;
  lifted.reserve(residue.size());
  for (const Term& t : residue.terms()) lifted.push_back({embed_tail(t.exponent, delta), t.coeff});
  return Series::from_terms(residue.field(), delta.rank(), std::move(lifted),
                            embed_tail(residue.precision(), delta));
}

ComposeReport compose_check(const Series& x, const ConvexSubgroup& delta) {
  require_rank(x, delta);
  ComposeReport report{.valuation = x.valuation().value(),
                       .coarse = coarse_value(x, delta),
                       .residue_valuation = Valuation::exact(Exponent::infinity(delta.index()))};
  if (report.valuation.is_infinite()) {
    // v(0) = inf on both levels.
    report.head = Exponent::infinity(delta.coarse_rank());
    report.tail = Exponent::infinity(delta.index());
    report.pass = report.coarse.is_infinite();
    return report;
  }
  report.head = project(report.valuation, delta);
  report.tail = tail(report.valuation, delta);
  const Series normalised = x.shifted(-pad(report.head, delta));
  report.residue_valuation = residue_series(normalised, delta).valuation();
  report.pass = report.coarse.known() && report.coarse.value() == report.head &&
                report.residue_valuation.known() && report.residue_valuation.value() == report.tail;
  return report;
}

}  // namespace henselium
