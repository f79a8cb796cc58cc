#pragma once

// Seeded generators for the property tests. HENSELIUM_SEED fixes the seed.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "henselium/coefficient.hpp"
#include "henselium/exponent.hpp"
#include "henselium/expression.hpp"
#include "henselium/polynomial.hpp"
#include "henselium/series.hpp"

namespace henselium::testing {

inline std::uint64_t seed() {
  if (const char* env = std::getenv("HENSELIUM_SEED")) return std::stoull(env);
  return 20240517;
}

/// Printable form with variables x1, x2, ...
inline std::string text(const Series& x) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < x.rank(); ++i) names.push_back("x" + std::to_string(i + 1));
  return format_series(x, names);
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt = 0) : rng_(seed() ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Field field() { return coin() ? Field::rationals() : Field::prime(pick({2, 3, 5, 7, 101})); }

  Coefficient nonzero_coefficient(Field f) {
    while (true) {
      const long num = integer(-9, 9);
      const long den = f.is_rational() ? integer(1, 4) : 1;
      const Coefficient c = Coefficient::from_rational(f, mpq_class(num, den));
      if (!c.is_zero()) return c;
    }
  }

  Exponent exponent(std::size_t rank, long lo, long hi) {
    CoordVector coords(rank);
    for (auto& c : coords) c = integer(lo, hi);
    return Exponent(coords);
  }

  /// Support of size <= max_terms with coordinates in [lo, hi]; exact or
  /// with a random precision.
  Series series(Field f, std::size_t rank, std::size_t max_terms = 8, long lo = -5, long hi = 5,
                bool exact = false) {
    std::vector<Term> terms;
    const long n = integer(0, static_cast<long>(max_terms));
    for (long i = 0; i < n; ++i) terms.push_back({exponent(rank, lo, hi), nonzero_coefficient(f)});
    const Exponent prec =
        exact || coin(0.4) ? Exponent::infinity(rank) : exponent(rank, lo, hi + 3);
    return Series::from_terms(f, rank, std::move(terms), prec);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  long pick(std::initializer_list<long> xs) {
    return *(xs.begin() + integer(0, static_cast<long>(xs.size()) - 1));
  }
  std::mt19937_64 rng_;
};

}  // namespace henselium::testing
