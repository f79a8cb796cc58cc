#pragma once

// The value group Z^n under lexicographic order, its convex subgroups and
// coset cofinality tests.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace henselium {

using Coord = std::int64_t;
using CoordVector = boost::container::small_vector<Coord, 4>;

/// Element of Z^n (first coordinate most significant) or the infinity
/// sentinel, which is the value of an exact zero.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(CoordVector coords) : coords_(std::move(coords)) {}
  Exponent(std::initializer_list<Coord> coords) : coords_(coords) {}

  static Exponent zero(std::size_t rank) { return Exponent(CoordVector(rank, 0)); }
  static Exponent infinity(std::size_t rank);
  /// The exponent with a single 1 at `index`.
  static Exponent unit(std::size_t rank, std::size_t index);
  /// Smallest positive exponent of Z^n, i.e. (0,...,0,1).
  static Exponent least_positive(std::size_t rank);

  std::size_t rank() const noexcept { return coords_.size(); }
  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  bool is_zero() const noexcept;
  /// -1, 0 or +1 according to the lexicographic sign; +1 for infinity.
  int sign() const noexcept;

  std::span<const Coord> coords() const;
  Coord operator[](std::size_t i) const { return coords()[i]; }

  Exponent operator+(const Exponent& other) const;
  Exponent operator-(const Exponent& other) const;
  Exponent operator-() const;
  Exponent scaled(Coord factor) const;

  std::strong_ordering operator<=>(const Exponent& other) const;
  bool operator==(const Exponent& other) const;

  std::string str() const;
  /// Parses "(2,-1)", "inf" or "()". A nonzero `rank` is enforced.
  static Exponent parse(std::string_view text, std::size_t rank = 0);

 private:
  // For infinity the coordinates are zero and only record the rank.
  CoordVector coords_;
  bool infinite_ = false;
};

std::strong_ordering lex_compare(const Exponent& a, const Exponent& b);
Exponent min(const Exponent& a, const Exponent& b);
Exponent max(const Exponent& a, const Exponent& b);

/// True when some positive multiple of `step` (> 0) reaches `target`.
bool multiple_reaches(const Exponent& step, const Exponent& target);

/// Delta_j: exponents whose first n-j coordinates vanish. Delta_0 = {0},
/// Delta_n is the whole group.
class ConvexSubgroup {
 public:
  ConvexSubgroup(std::size_t rank, std::size_t j);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t index() const noexcept { return j_; }
  /// Rank of the quotient Z^n / Delta_j.
  std::size_t coarse_rank() const noexcept { return rank_ - j_; }
  bool is_trivial() const noexcept { return j_ == 0; }

  bool contains(const Exponent& e) const;
  bool includes(const ConvexSubgroup& other) const { return other.j_ <= j_; }

  bool operator==(const ConvexSubgroup&) const = default;
  std::string str() const;

 private:
  std::size_t rank_;
  std::size_t j_;
};

/// Image in Z^n / Delta_j: the first n-j coordinates. Infinity stays infinity.
Exponent project(const Exponent& a, const ConvexSubgroup& delta);
/// The Delta_j-component: the last j coordinates.
Exponent tail(const Exponent& a, const ConvexSubgroup& delta);
/// (head, 0, ..., 0) in Z^n for a coarse value `head`.
Exponent pad(const Exponent& head, const ConvexSubgroup& delta);
/// (0, ..., 0, tail) in Z^n for a Delta_j-component `tail`.
Exponent embed_tail(const Exponent& tail_part, const ConvexSubgroup& delta);

struct CofinalityVerdict {
  bool cofinal = false;
  /// A sampled value above the coset, or the top of the coset members when
  /// the coset is exhausted below the horizon.
  std::optional<Exponent> counterexample;
  Exponent horizon;
  std::size_t members = 0;
};

/// Tests whether alpha + delta is cofinal in `values` up to `horizon`:
/// every value lies below some coset element and the coset members are cut
/// only by the horizon.
CofinalityVerdict coset_cofinal_in(std::span<const Exponent> values, const Exponent& alpha,
                                   const ConvexSubgroup& delta, const Exponent& horizon);

}  // namespace henselium
