#include "henselium/diagnostics.hpp"

#include <algorithm>
#include <set>

#include "henselium/coarsening.hpp"
#include "henselium/error.hpp"

namespace henselium {

namespace {

// All but the last coordinate.
Exponent prefix(const Exponent& e) { return project(e, ConvexSubgroup(e.rank(), 1)); }

void require_horizon(const Series& z, const Exponent& horizon) {
  if (horizon.rank() != z.rank()) fail(ErrorCode::RankMismatch, "horizon rank mismatch");
  if (z.precision() < horizon) {
    fail(ErrorCode::PrecisionExceeded, "horizon " + horizon.str() + " lies beyond the precision " +
                                           z.precision().str());
  }
}

std::vector<Exponent> support_below(const Series& z, const Exponent& horizon) {
  std::vector<Exponent> out;
  for (const Term& t : z.terms()) {
    if (!(t.exponent < horizon)) break;
    out.push_back(t.exponent);
  }
  return out;
}

std::vector<Exponent> sorted(std::vector<Exponent> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<Exponent> gap_exponents(std::span<const Exponent> support) {
  std::vector<Exponent> out;
  for (std::size_t i = 1; i < support.size(); ++i) {
    const Exponent p = prefix(support[i]);
    const bool block_start = p != prefix(support[i - 1]);
    const bool block_continues = i + 1 < support.size() && prefix(support[i + 1]) == p;
    if (block_start && block_continues) continue;
    out.push_back(support[i]);
  }
  return out;
}

std::vector<ApproximationRecord> sample_value_set(const Series& z, const Exponent& horizon) {
  require_horizon(z, horizon);
  const std::vector<Exponent> support = support_below(z, horizon);
  const std::vector<Exponent> gaps = gap_exponents(support);
  std::vector<ApproximationRecord> records = build_records_parallel(z, gaps);
  if (z.is_exact() && support.size() == z.size()) {
    records.push_back({z, Exponent::infinity(z.rank())});
  }
  return records;
}

std::vector<Exponent> gaps_of(std::span<const ApproximationRecord> records) {
  std::vector<Exponent> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.gap);
  return out;
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::WeaklyDistinguished: return "WEAKLY_DISTINGUISHED_UP_TO_HORIZON";
    case Verdict::Distinguished: return "DISTINGUISHED_UP_TO_HORIZON";
    case Verdict::InBaseField: return "IN_BASE_FIELD";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

bool is_weakly(Verdict v) noexcept {
  return v == Verdict::WeaklyDistinguished || v == Verdict::Distinguished;
}

CofinalityReport classify_gaps(std::span<const Exponent> gaps, std::size_t rank,
                               const Exponent& horizon, std::size_t min_samples) {
  CofinalityReport report{.gaps = {gaps.begin(), gaps.end()},
                          .candidate_alpha = Exponent::zero(rank),
                          .horizon = horizon};
  if (horizon.rank() != rank) fail(ErrorCode::RankMismatch, "horizon rank mismatch");
  if (std::any_of(gaps.begin(), gaps.end(), [](const Exponent& g) { return g.is_infinite(); })) {
    report.verdict = Verdict::InBaseField;
    report.note = "an approximant equals the element";
    return report;
  }
  if (gaps.empty()) {
    report.note = "no gaps below the horizon";
    return report;
  }
  const Exponent top = *std::max_element(gaps.begin(), gaps.end());
  for (std::size_t j = 1; j <= rank; ++j) {
    const ConvexSubgroup delta(rank, j);
    const Exponent head = project(top, delta);
    const Exponent alpha = pad(head, delta);
    const CofinalityVerdict v = coset_cofinal_in(gaps, alpha, delta, horizon);
    if (!v.cofinal) continue;
    // The coset members must climb in the leading coordinate of Delta_j.
    const std::size_t level = rank - j;
    std::set<Coord> levels;
    for (const Exponent& g : gaps) {
      if (project(g, delta) == head) levels.insert(g[level]);
    }
    if (levels.size() < min_samples) {
      report.note = delta.str() + ": only " + std::to_string(levels.size()) +
                    " distinct levels in the coset, fewer than " + std::to_string(min_samples);
      continue;
    }
    report.candidate_alpha = alpha;
    report.candidate_delta = delta;
    report.coset_members = v.members;
    report.verdict = head.is_zero() ? Verdict::Distinguished : Verdict::WeaklyDistinguished;
    report.note.clear();
    return report;
  }
  if (report.note.empty()) report.note = "no coset of a convex subgroup is cofinal up to the horizon";
  return report;
}

CofinalityReport classify(const Series& z, const Exponent& horizon, std::size_t min_samples) {
  std::vector<ApproximationRecord> records = sample_value_set(z, horizon);
  CofinalityReport report = classify_gaps(gaps_of(records), z.rank(), horizon, min_samples);
  report.samples = std::move(records);
  return report;
}

FsegmReport fsegm_check(const Series& z, std::span<const ApproximationRecord> records) {
  FsegmReport report;
  std::vector<Exponent> finite;
  for (const auto& r : records) {
    if (r.gap.is_finite()) finite.push_back(r.gap);
  }
  const std::vector<Exponent> gaps = sorted(finite);
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (!(gaps[i - 1] < gaps[i])) {
      report.pass = false;
      report.failures.push_back("repeated gap " + gaps[i].str());
    }
  }
  for (const auto& r : records) {
    if (r.gap.is_infinite()) continue;
    for (const Exponent& d : gaps) {
      if (!(d < r.gap)) break;
      const Series probe = r.approximant + Series::monomial(z.field(), d);
      const Valuation v = (z - probe).valuation();
      ++report.checked;
      if (!v.known() || v.value() != d) {
        report.pass = false;
        report.failures.push_back("v(z - c - t^" + d.str() + ") = " + v.str() + " for gap " +
                                  r.gap.str());
      }
    }
  }
  return report;
}

AatReport aat_check(const Series& z, const Series& b, const Series& c, const Exponent& horizon) {
  z.check_compatible(b);
  z.check_compatible(c);
  if (!b.has_support() || !b.is_exact()) {
    fail(ErrorCode::InvalidArgument, "b must be a nonzero element of K");
  }
  if (!c.is_exact()) fail(ErrorCode::InvalidArgument, "c must be an element of K");
  AatReport report{.shift = b.valuation().value(), .horizon = horizon};
  const Series w = b * z + c;
  const CofinalityReport left = classify(w, report.shift + horizon);
  const CofinalityReport right = classify(z, horizon);
  report.lhs = sorted(gaps_of(left.samples));
  for (const Exponent& g : gaps_of(right.samples)) report.rhs.push_back(g + report.shift);
  report.rhs = sorted(std::move(report.rhs));
  report.verdict_bz = left.verdict;
  report.verdict_z = right.verdict;
  report.pass = report.lhs == report.rhs;
  return report;
}

std::string_view check_name(Check c) noexcept {
  switch (c) {
    case Check::Pass: return "PASS";
    case Check::PassAtHorizon: return "PASS_AT_HORIZON";
    case Check::Fail: return "FAIL";
    case Check::NotEvaluated: return "NOT_EVALUATED";
  }
  return "NOT_EVALUATED";
}

ChardistReport chardist_check(const Series& z, const ConvexSubgroup& delta, const Exponent& horizon,
                              bool asserted_irrational) {
  require_horizon(z, horizon);
  if (delta.is_trivial()) {
    fail(ErrorCode::PreconditionViolated, "the convex subgroup must be non-trivial");
  }
  const Valuation coarse = coarse_value(z, delta);
  if (!coarse.known() || !coarse.value().is_zero()) {
    fail(ErrorCode::PreconditionViolated,
         "the coarse value of z is " + coarse.str() + ", not 0");
  }
  const Exponent head = project(horizon, delta);
  if (head.sign() < 0) {
    fail(ErrorCode::PreconditionViolated, "the horizon lies below coarse value 0");
  }
  const std::size_t j = delta.index();
  ChardistReport report{.residue = residue_series(z, delta),
                        .residue_horizon = head.is_zero() ? tail(horizon, delta)
                                                          : Exponent::infinity(j),
                        .horizon = horizon};
  const Series& y = report.residue;
  const Exponent& precision = y.precision();

  report.approximation_trace = gaps_of(sample_value_set(y, min(report.residue_horizon, precision)));
  report.completion = Check::Pass;

  if (y.is_exact()) {
    report.non_membership = Check::Fail;
    report.basis = "evidence";
  } else if (asserted_irrational) {
    report.non_membership = Check::Pass;
    report.basis = "asserted";
  } else {
    report.basis = "evidence";
    for (const Term& t : y.terms()) {
      if (!(t.exponent < report.residue_horizon)) ++report.support_in_window;
    }
    const bool window = report.residue_horizon < precision;
    report.non_membership =
        !window || report.support_in_window > 0 ? Check::PassAtHorizon : Check::Fail;
  }
  report.verdict = report.non_membership;
  return report;
}

std::optional<std::vector<Coefficient>> roots_in_prime_field(const ValPolynomial& f) {
  if (f.rank() != 0) fail(ErrorCode::RankMismatch, "root finding needs a rank-0 polynomial");
  if (f.is_zero() || !f.is_exact()) return std::nullopt;
  const Field field = f.field();
  const Exponent origin = Exponent::zero(0);
  std::vector<Coefficient> roots;
  if (!field.is_rational()) {
    if (field.modulus() > (1u << 20)) return std::nullopt;
    for (std::uint64_t r = 0; r < field.modulus(); ++r) {
      const Series x = Series::integer(field, 0, static_cast<long>(r));
      if (!f.evaluate(x).has_support()) roots.push_back(x.coefficient(origin));
    }
    return roots;
  }

  std::vector<mpq_class> a;
  for (const Series& c : f.coefficients()) a.push_back(*c.coefficient(origin).rational());
  mpz_class common = 1;
  for (const mpq_class& q : a) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const mpq_class& q : a) ints.push_back(mpz_class(q * common));
  if (ints.front() == 0) {
    roots.push_back(Coefficient::zero(field));
    while (!ints.empty() && ints.front() == 0) ints.erase(ints.begin());
  }
  if (ints.size() <= 1) return roots;
  const mpz_class limit("1000000000000");
  const mpz_class a0 = abs(ints.front());
  const mpz_class an = abs(ints.back());
  if (a0 > limit || an > limit) return std::nullopt;
  const auto divisors = [](const mpz_class& n) {
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
      }
    }
    return out;
  };
  std::set<mpq_class> found;
  for (const mpz_class& p : divisors(a0)) {
    for (const mpz_class& q : divisors(an)) {
      for (int sign : {1, -1}) {
        mpq_class r(sign * p, q);
        r.canonicalize();
        mpq_class acc = 0;
        for (std::size_t i = ints.size(); i-- > 0;) acc = acc * r + ints[i];
        if (acc == 0) found.insert(r);
      }
    }
  }
  for (const mpq_class& r : found) roots.push_back(Coefficient::from_rational(field, r));
  return roots;
}

namespace {

// SD3 at rank j: splits the residue polynomial along the simple roots of its
// own residue, lifts each linear block, and looks for a proper factor
// through the block of the residue of z whose coefficients all stop short
// of the residue horizon, i.e. look like elements of K v_Delta.
void evaluate_sd3(SdReport& report, const ValPolynomial& f,
                  const ConvexSubgroup& delta) {
  const std::size_t j = delta.index();
  if (f.degree() == 1) {
    report.sd3 = Check::Pass;
    report.sd3_note = "linear minimal polynomial";
    report.block_degrees = {1};
    return;
  }
  const ValPolynomial f_bar = residue_polynomial(f, delta);
  const ConvexSubgroup bottom(j, 0);
  if (!f_bar.is_integral() || !f_bar.is_monic()) {
    report.sd3_note = "the residue polynomial is not monic and integral";
    return;
  }
  const Series& y = report.chardist.residue;
  if (!y.valuation().at_least(Exponent::zero(j))) {
    report.sd3_note = "the residue of z is not integral";
    return;
  }
  const ValPolynomial f_bottom = residue_polynomial(f_bar, bottom);
  const auto roots = roots_in_prime_field(f_bottom);
  if (!roots) {
    report.sd3_note = "roots of the reduced residue polynomial cannot be enumerated";
    return;
  }
  const Exponent origin = Exponent::zero(0);
  const Coefficient y0 = residue_series(y, bottom).coefficient(origin);
  const Exponent window_low = report.chardist.residue_horizon.is_finite()
                                  ? report.chardist.residue_horizon
                                  : Exponent::least_positive(j).scaled(32);
  const Exponent target = window_low.scaled(2);

  const ValPolynomial deriv = f_bottom.derivative();
  const ValPolynomial X = ValPolynomial::indeterminate(f.field(), j);
  std::vector<ValPolynomial> blocks;
  int y_block = -1;
  ValPolynomial linear_product = ValPolynomial::constant(Series::integer(f.field(), j, 1));
  for (const Coefficient& r : *roots) {
    report.residue_roots.push_back(r.str());
    const Series r0 = Series::constant(f.field(), 0, r);
    if (!deriv.evaluate(r0).has_support()) continue;  // multiple root
    const HenselResult lifted = hensel_root(f_bar, Series::constant(f.field(), j, r), target);
    const ValPolynomial block = X - ValPolynomial::constant(lifted.root);
    if (r == y0) y_block = static_cast<int>(blocks.size());
    blocks.push_back(block);
    linear_product = linear_product * block;
  }
  if (linear_product.degree() < f_bar.degree()) {
    ValPolynomial rest = divmod_monic(f_bar.with_precision(target), linear_product.truncated(target)).first;
    if (y_block < 0) y_block = static_cast<int>(blocks.size());
    blocks.push_back(rest);
  }
  for (const ValPolynomial& b : blocks) report.block_degrees.push_back(b.degree());
  if (y_block < 0 || blocks.size() < 2) {
    report.sd3 = Check::PassAtHorizon;
    report.sd3_note = "no coprime split of the residue polynomial separates the residue of z";
    return;
  }

  const std::size_t others = blocks.size() - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << others); ++mask) {
    ValPolynomial product = blocks[static_cast<std::size_t>(y_block)];
    for (std::size_t i = 0, k = 0; i < blocks.size(); ++i) {
      if (static_cast<int>(i) == y_block) continue;
      if (mask & (std::size_t{1} << k)) product = product * blocks[i];
      ++k;
    }
    if (product.degree() >= f.degree()) continue;
    bool terminates = true;
    for (const Series& c : product.coefficients()) {
      for (const Term& t : c.terms()) {
        if (!(t.exponent < window_low)) terminates = false;
      }
    }
    if (terminates) {
      report.sd3 = Check::Fail;
      report.sd3_note = "a factor of degree " + std::to_string(product.degree()) +
                        " through the residue of z has terminating coefficients";
      return;
    }
  }
  report.sd3 = Check::PassAtHorizon;
  report.sd3_note = "every proper factor through the residue of z has coefficients beyond the horizon";
}

}  // namespace

SdReport sd_check(const Series& z, const ValPolynomial& f, const ConvexSubgroup& delta,
                  const Exponent& horizon, bool asserted_irrational) {
  if (delta.is_trivial()) {
    fail(ErrorCode::PreconditionViolated, "the convex subgroup must be non-trivial");
  }
  if (!f.is_monic()) fail(ErrorCode::NotMonic, "the minimal polynomial must be monic");
  if (!f.is_integral()) fail(ErrorCode::NotIntegral, "the minimal polynomial must be integral");
  require_horizon(z, horizon);
  SdReport report{.horizon = horizon};
  const Valuation coarse = coarse_value(z, delta);
  report.sd1 = coarse.known() && coarse.value().is_zero() ? Check::Pass : Check::Fail;
  if (report.sd1 != Check::Pass) {
    report.sd3_note = "SD1 fails; the residue of z is undefined";
    return report;
  }
  report.chardist = chardist_check(z, delta, horizon, asserted_irrational);
  report.sd2 = report.chardist.verdict;
  evaluate_sd3(report, f, delta);
  return report;
}

TransferReport coarsening_transfer_check(const Series& z, const ConvexSubgroup& delta,
                                         const Exponent& horizon, std::size_t min_samples) {
  require_horizon(z, horizon);
  if (delta.is_trivial()) {
    fail(ErrorCode::PreconditionViolated, "the coarsening must be proper: Delta non-trivial");
  }
  TransferReport report{.delta = delta};
  report.fine = classify(z, horizon, min_samples);

  const Exponent coarse_horizon = project(horizon, delta);
  const std::size_t coarse_rank = delta.coarse_rank();
  std::vector<Exponent> heads;
  for (const Term& t : z.terms()) {
    const Exponent h = project(t.exponent, delta);
    if (!(h < coarse_horizon)) break;
    if (heads.empty() || heads.back() != h) heads.push_back(h);
  }
  if (coarse_rank > 0) report.coarse_gaps = gap_exponents(heads);
  const bool in_k = z.is_exact() && std::all_of(z.terms().begin(), z.terms().end(), [&](const Term& t) {
                      return t.exponent < horizon;
                    });
  std::vector<Exponent> coarse_sample = report.coarse_gaps;
  if (in_k) coarse_sample.push_back(Exponent::infinity(coarse_rank));
  if (coarse_rank > 0) {
    report.coarse = classify_gaps(coarse_sample, coarse_rank, coarse_horizon, min_samples);
  } else {
    report.coarse.horizon = coarse_horizon;
    report.coarse.candidate_alpha = coarse_horizon;
    report.coarse.note = "the coarse value group is trivial";
  }
  report.vacuous = !is_weakly(report.coarse.verdict);
  report.implication_holds = report.vacuous || is_weakly(report.fine.verdict);
  return report;
}

TowerReport tower_check(const ValPolynomial& inner, const Series& inner_start,
                        const std::vector<ValPolynomial>& outer_coeffs, const Series& outer_start,
                        const Exponent& horizon, const Exponent& precision,
                        std::size_t min_samples) {
  TowerReport report;
  report.inner = hensel_root(inner, inner_start, precision);
  const Series& x = report.inner.root;

  std::vector<Series> coeffs;
  for (const ValPolynomial& c : outer_coeffs) coeffs.push_back(c.evaluate(x));
  const ValPolynomial outer = ValPolynomial::from_coefficients(inner.field(), inner.rank(), coeffs);
  report.outer = hensel_root(outer, outer_start, precision);
  const Series& z = report.outer.root;

  report.over_k = classify(z, horizon, min_samples);
  report.hypothesis = classify(x, horizon, min_samples);

  // Approximants from L = K(x): the Newton iterates computed with the
  // untruncated coefficients of the outer polynomial.
  std::vector<Exponent> l_gaps = gaps_of(report.over_k.samples);
  Series c = truncate_at(outer_start, outer_start.precision());
  for (std::size_t k = 0; k < kDefaultIterationCap; ++k) {
    const Valuation v = (z - c).valuation();
    if (!v.known() || !(v.value() < horizon)) break;
    if (std::find(l_gaps.begin(), l_gaps.end(), v.value()) == l_gaps.end()) {
      report.l_only_gaps.push_back(v.value());
      l_gaps.push_back(v.value());
    }
    const Series fc = outer.evaluate(c);
    if (!fc.has_support()) break;
    c = newton_step(outer, c, precision);
  }
  report.over_l = classify_gaps(sorted(l_gaps), z.rank(), horizon, min_samples);

  const bool premise = is_weakly(report.over_l.verdict) && is_weakly(report.hypothesis.verdict);
  report.vacuous = !premise;
  report.implication_holds = !premise || is_weakly(report.over_k.verdict);
  return report;
}

}  // namespace henselium
