#pragma once

// Sampled approximation value sets v(z - K) and the classification of
// elements as (weakly) distinguished, with the supporting checks.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "henselium/exponent.hpp"
#include "henselium/hensel.hpp"
#include "henselium/polynomial.hpp"
#include "henselium/series.hpp"

namespace henselium {

struct ApproximationRecord {
  Series approximant;  // exact
  Exponent gap;        // v(z - approximant)
};

/// The gap exponents read off a sorted, duplicate-free list of support
/// values below the horizon: the valuation itself and the first value of
/// every block sharing all but the last coordinate with a later value are
/// the values of the trivial approximants and are left out.
std::vector<Exponent> gap_exponents(std::span<const Exponent> support);

/// Truncation records for the given gaps, one per gap; the stored gap is
/// recomputed from the pair. Serial reference and OpenMP version.
std::vector<ApproximationRecord> build_records_serial(const Series& z, std::span<const Exponent> gaps);
std::vector<ApproximationRecord> build_records_parallel(const Series& z,
                                                        std::span<const Exponent> gaps);

/// Truncations of z at the sampled gap values below `horizon`, plus z itself
/// with gap infinity when z is exact with all support below the horizon.
std::vector<ApproximationRecord> sample_value_set(const Series& z, const Exponent& horizon);

std::vector<Exponent> gaps_of(std::span<const ApproximationRecord> records);

enum class Verdict {
  WeaklyDistinguished,
  Distinguished,
  InBaseField,
  Inconclusive,
};

std::string_view verdict_name(Verdict v) noexcept;
/// Distinguished counts as weakly distinguished.
bool is_weakly(Verdict v) noexcept;

inline constexpr std::size_t kDefaultMinSamples = 8;

struct CofinalityReport {
  std::vector<ApproximationRecord> samples;
  /// The gaps the verdict was read from.
  std::vector<Exponent> gaps;
  Exponent candidate_alpha;
  std::optional<ConvexSubgroup> candidate_delta;
  Exponent horizon;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t coset_members = 0;
  std::string note;
};

/// Searches Delta_1, ..., Delta_n for a coset alpha + Delta cofinal in the
/// gaps up to the horizon, with alpha read from the largest gap.
CofinalityReport classify_gaps(std::span<const Exponent> gaps, std::size_t rank,
                               const Exponent& horizon, std::size_t min_samples = kDefaultMinSamples);
CofinalityReport classify(const Series& z, const Exponent& horizon,
                          std::size_t min_samples = kDefaultMinSamples);

struct FsegmReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// For every record gap gamma and every sampled gap delta < gamma,
/// c + t^delta approximates z with value exactly delta; and every gap but
/// the largest has a larger sampled gap.
FsegmReport fsegm_check(const Series& z, std::span<const ApproximationRecord> records);

struct AatReport {
  bool pass = false;
  Exponent shift;
  Exponent horizon;
  std::vector<Exponent> lhs;  // gaps of b*z + c
  std::vector<Exponent> rhs;  // v(b) + gaps of z
  Verdict verdict_z = Verdict::Inconclusive;
  Verdict verdict_bz = Verdict::Inconclusive;
};

/// Compares the gaps of b*z + c below v(b) + horizon with the gaps of z
/// below horizon shifted by v(b). b and c must be exact, b nonzero.
AatReport aat_check(const Series& z, const Series& b, const Series& c, const Exponent& horizon);

enum class Check { Pass, PassAtHorizon, Fail, NotEvaluated };
std::string_view check_name(Check c) noexcept;

struct ChardistReport {
  Check completion = Check::NotEvaluated;      // (a)
  Check non_membership = Check::NotEvaluated;  // (b)
  Check verdict = Check::NotEvaluated;
  /// "evidence" or "asserted".
  std::string basis;
  Series residue;
  Exponent residue_horizon;
  /// Gaps of the residue's approximation by its truncations.
  std::vector<Exponent> approximation_trace;
  std::size_t support_in_window = 0;
  Exponent horizon;
};

/// z with v_Delta z = 0: its residue lies in the completion of K v_Delta
/// (approximation trace) and, up to the horizon, not in K v_Delta.
ChardistReport chardist_check(const Series& z, const ConvexSubgroup& delta, const Exponent& horizon,
                              bool asserted_irrational = false);

struct SdReport {
  Check sd1 = Check::NotEvaluated;
  Check sd2 = Check::NotEvaluated;
  Check sd3 = Check::NotEvaluated;
  ChardistReport chardist;
  std::vector<std::string> residue_roots;  // roots of the doubly reduced polynomial
  std::vector<int> block_degrees;
  std::string sd3_note;
  Exponent horizon;
};

/// Roots in the coefficient field of an exact rank-0 polynomial, when they
/// can be enumerated (F_p with p <= 2^20, or Q with moderate coefficients).
std::optional<std::vector<Coefficient>> roots_in_prime_field(const ValPolynomial& f);

/// The axioms SD1-SD3 for z with minimal polynomial f and a non-trivial
/// Delta.
SdReport sd_check(const Series& z, const ValPolynomial& f, const ConvexSubgroup& delta,
                  const Exponent& horizon, bool asserted_irrational = false);

struct TransferReport {
  CofinalityReport fine;
  CofinalityReport coarse;
  std::vector<Exponent> coarse_gaps;
  bool implication_holds = false;
  bool vacuous = false;
  ConvexSubgroup delta{1, 0};
};

/// Classifies z under v and under the coarsening v_Delta (value group
/// Z^n / Delta) and checks "weakly under v_Delta implies weakly under v".
TransferReport coarsening_transfer_check(const Series& z, const ConvexSubgroup& delta,
                                         const Exponent& horizon,
                                         std::size_t min_samples = kDefaultMinSamples);

struct TowerReport {
  HenselResult inner;  // x over K
  HenselResult outer;  // z over K(x)
  CofinalityReport over_l;
  CofinalityReport over_k;
  CofinalityReport hypothesis;  // x over K
  std::vector<Exponent> l_only_gaps;
  bool implication_holds = false;
  bool vacuous = false;
};

/// Tower K <= K(x) <= K(x)(z): x a root of `inner`, z a root of `outer`
/// whose coefficients are given as polynomials in x (degree-k coefficient of
/// the outer polynomial is outer_coeffs[k], a polynomial in Y).
TowerReport tower_check(const ValPolynomial& inner, const Series& inner_start,
                        const std::vector<ValPolynomial>& outer_coeffs, const Series& outer_start,
                        const Exponent& horizon, const Exponent& precision,
                        std::size_t min_samples = kDefaultMinSamples);

}  // namespace henselium
