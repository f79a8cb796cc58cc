#include "henselium/exponent.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "henselium/error.hpp"

namespace henselium {

namespace {

[[noreturn, gnu::noinline, gnu::cold]] void rank_mismatch(const Exponent& a, const Exponent& b) {
  fail(ErrorCode::RankMismatch, "exponent rank mismatch: " + a.str() + " vs " + b.str());
}

inline void require_same_rank(const Exponent& a, const Exponent& b) {
  if (a.rank() != b.rank()) [[unlikely]] rank_mismatch(a, b);
}

}  // namespace

Exponent Exponent::infinity(std::size_t rank) {
  Exponent e = zero(rank);
  e.infinite_ = true;
  return e;
}

Exponent Exponent::unit(std::size_t rank, std::size_t index) {
  if (index >= rank) fail(ErrorCode::InvalidArgument, "unit exponent index out of range");
  Exponent e = zero(rank);
  e.coords_[index] = 1;
  return e;
}

Exponent Exponent::least_positive(std::size_t rank) {
  if (rank == 0) fail(ErrorCode::InvalidArgument, "Z^0 has no positive elements");
  return unit(rank, rank - 1);
}

bool Exponent::is_zero() const noexcept {
  return !infinite_ && std::all_of(coords_.begin(), coords_.end(), [](Coord c) { return c == 0; });
}

int Exponent::sign() const noexcept {
  if (infinite_) return 1;
  for (Coord c : coords_) {
    if (c != 0) return c > 0 ? 1 : -1;
  }
  return 0;
}

std::span<const Coord> Exponent::coords() const {
  if (infinite_) fail(ErrorCode::InvalidArgument, "infinity has no coordinates");
  return {coords_.data(), coords_.size()};
}

Exponent Exponent::operator+(const Exponent& other) const {
  require_same_rank(*this, other);
  if (infinite_ || other.infinite_) return infinity(rank());
  Exponent out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += other.coords_[i];
  return out;
}

Exponent Exponent::operator-(const Exponent& other) const {
  require_same_rank(*this, other);
  if (other.infinite_) fail(ErrorCode::InvalidArgument, "cannot subtract infinity");
  if (infinite_) return *this;
  Exponent out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] -= other.coords_[i];
  return out;
}

Exponent Exponent::operator-() const {
  if (infinite_) fail(ErrorCode::InvalidArgument, "cannot negate infinity");
  Exponent out = *this;
  for (Coord& c : out.coords_) c = -c;
  return out;
}

Exponent Exponent::scaled(Coord factor) const {
  if (infinite_) {
    if (factor <= 0) fail(ErrorCode::InvalidArgument, "non-positive multiple of infinity");
    return *this;
  }
  Exponent out = *this;
  for (Coord& c : out.coords_) c *= factor;
  return out;
}

std::strong_ordering Exponent::operator<=>(const Exponent& other) const {
  require_same_rank(*this, other);
  if (infinite_ || other.infinite_) {
    if (infinite_ && other.infinite_) return std::strong_ordering::equal;
    return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != other.coords_[i]) return coords_[i] <=> other.coords_[i];
  }
  return std::strong_ordering::equal;
}

bool Exponent::operator==(const Exponent& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::string Exponent::str() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ',';
    out << coords_[i];
  }
  out << ')';
  return out.str();
}

Exponent Exponent::parse(std::string_view text, std::size_t rank) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "inf" || text == "INF" || text == "infinity") {
    if (rank == 0) fail(ErrorCode::SyntaxError, "rank of 'inf' is unknown in this context");
    return infinity(rank);
  }
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    fail(ErrorCode::SyntaxError, "exponent must look like (a,b,...): '" + std::string(text) + "'");
  }
  std::string_view body = trim(text.substr(1, text.size() - 2));
  CoordVector coords;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    Coord value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      fail(ErrorCode::SyntaxError, "bad exponent coordinate '" + std::string(item) + "'");
    }
    coords.push_back(value);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
    if (trim(body).empty()) fail(ErrorCode::SyntaxError, "trailing comma in exponent");
  }
  if (rank != 0 && coords.size() != rank) {
    fail(ErrorCode::RankMismatch, "exponent " + std::string(text) + " does not have rank " +
                                      std::to_string(rank));
  }
  return Exponent(std::move(coords));
}

std::strong_ordering lex_compare(const Exponent& a, const Exponent& b) { return a <=> b; }

Exponent min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }

Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

bool multiple_reaches(const Exponent& step, const Exponent& target) {
  if (step.rank() != target.rank()) fail(ErrorCode::RankMismatch, "rank mismatch");
  if (step.sign() <= 0) fail(ErrorCode::InvalidArgument, "step must be positive");
  if (target.is_infinite()) return step.is_infinite();
  if (step.is_infinite() || target.sign() <= 0) return true;
  auto s = step.coords();
  auto t = target.coords();
  std::size_t first_step = 0;
  while (s[first_step] == 0) ++first_step;
  std::size_t first_target = 0;
  while (t[first_target] == 0) ++first_target;
  // k*step beats target iff the step's leading coordinate is at least as
  // significant as the target's.
  return first_step <= first_target;
}

ConvexSubgroup::ConvexSubgroup(std::size_t rank, std::size_t j) : rank_(rank), j_(j) {
  if (j > rank) {
    fail(ErrorCode::InvalidArgument, "convex subgroup index " + std::to_string(j) +
                                         " exceeds rank " + std::to_string(rank));
  }
}

bool ConvexSubgroup::contains(const Exponent& e) const {
  if (e.rank() != rank_) fail(ErrorCode::RankMismatch, "rank mismatch in subgroup membership");
  if (e.is_infinite()) return false;
  auto c = e.coords();
  return std::all_of(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(rank_ - j_),
                     [](Coord x) { return x == 0; });
}

std::string ConvexSubgroup::str() const { return "Delta_" + std::to_string(j_); }

Exponent project(const Exponent& a, const ConvexSubgroup& delta) {
  if (a.rank() != delta.rank()) fail(ErrorCode::RankMismatch, "rank mismatch in project");
  if (a.is_infinite()) return Exponent::infinity(delta.coarse_rank());
  auto c = a.coords();
  return Exponent(CoordVector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(delta.coarse_rank())));
}

Exponent tail(const Exponent& a, const ConvexSubgroup& delta) {
  if (a.rank() != delta.rank()) fail(ErrorCode::RankMismatch, "rank mismatch in tail");
  if (a.is_infinite()) return Exponent::infinity(delta.index());
  auto c = a.coords();
  return Exponent(CoordVector(c.begin() + static_cast<std::ptrdiff_t>(delta.coarse_rank()), c.end()));
}

Exponent pad(const Exponent& head, const ConvexSubgroup& delta) {
  if (head.rank() != delta.coarse_rank()) fail(ErrorCode::RankMismatch, "rank mismatch in pad");
  if (head.is_infinite()) return Exponent::infinity(delta.rank());
  auto c = head.coords();
  CoordVector out(c.begin(), c.end());
  out.resize(delta.rank(), 0);
  return Exponent(std::move(out));
}

Exponent embed_tail(const Exponent& tail_part, const ConvexSubgroup& delta) {
  if (tail_part.rank() != delta.index()) fail(ErrorCode::RankMismatch, "rank mismatch in embed");
  if (tail_part.is_infinite()) return Exponent::infinity(delta.rank());
  CoordVector out(delta.coarse_rank(), 0);
  auto c = tail_part.coords();
  out.insert(out.end(), c.begin(), c.end());
  return Exponent(std::move(out));
}

CofinalityVerdict coset_cofinal_in(std::span<const Exponent> values, const Exponent& alpha,
                                   const ConvexSubgroup& delta, const Exponent& horizon) {
  if (values.empty()) fail(ErrorCode::EmptySample, "cofinality test on an empty sample");
  for (const Exponent& v : values) {
    if (!(v < horizon)) {
      fail(ErrorCode::PreconditionViolated,
           "sampled value " + v.str() + " is not below the horizon " + horizon.str());
    }
  }
  CofinalityVerdict verdict;
  verdict.horizon = horizon;
  const Exponent coset = project(alpha, delta);

  const Exponent* top_member = nullptr;
  for (const Exponent& v : values) {
    const Exponent head = project(v, delta);
    if (head > coset) {
      verdict.counterexample = v;
      return verdict;
    }
    if (head == coset) {
      ++verdict.members;
      if (!top_member || *top_member < v) top_member = &v;
    }
  }
  if (!top_member) {
    // Nothing sampled inside the coset at all.
    verdict.counterexample = *std::max_element(values.begin(), values.end());
    return verdict;
  }
  if (project(horizon, delta) != coset) {
    // The coset ends below the horizon, so the finite sample shows it bounded.
    verdict.counterexample = *top_member;
    return verdict;
  }
  verdict.cofinal = true;
  return verdict;
}

}  // namespace henselium
