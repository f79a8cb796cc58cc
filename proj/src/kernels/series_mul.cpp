// Cauchy product kernels. mul_serial is the reference; mul_parallel splits
// the output range across OpenMP threads and must agree with it term for
// term.
//
// Products whose exponents fit a small box of Z^n are accumulated densely:
// a mixed-radix index with the first coordinate most significant orders the
// box lexicographically, so x_i + y_j has index ix_i + iy_j and the cells come
// out sorted. Sparse products with a large box go through an ordered map.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include <omp.h>

#include "henselium/series.hpp"

namespace henselium {

namespace {

using Index = std::int64_t;

struct Box {
  CoordVector lo;
  std::vector<Index> stride;
  Index volume = 0;
  std::vector<Index> ix;
  std::vector<Index> iy;
  // Cells with index below `cut` lie below the product precision.
  Index cut = 0;
};

constexpr Index kMaxVolume = Index{1} << 24;

Index offset(const Exponent& e, const CoordVector& lo, const std::vector<Index>& stride) {
  Index k = 0;
  for (std::size_t c = 0; c < stride.size(); ++c) k += (e[c] - lo[c]) * stride[c];
  return k;
}

// Number of box cells lexicographically below `precision`.
Index cells_below(const Exponent& precision, const CoordVector& lo, const CoordVector& hi,
                  const std::vector<Index>& stride, Index volume) {
  if (precision.is_infinite()) return volume;
  Index cut = 0;
  for (std::size_t c = 0; c < stride.size(); ++c) {
    const Coord p = precision[c];
    cut += (std::clamp<Coord>(p, lo[c], hi[c] + 1) - lo[c]) * stride[c];
    if (p < lo[c] || p > hi[c]) break;
  }
  return cut;
}

std::optional<Box> dense_box(const Series& x, const Series& y, const Exponent& precision) {
  const auto& xt = x.terms();
  const auto& yt = y.terms();
  const std::size_t rank = x.rank();
  if (xt.empty() || yt.empty()) return std::nullopt;
  CoordVector xlo(rank), xhi(rank), ylo(rank), yhi(rank);
  const auto bounds = [rank](std::span<const Term> ts, CoordVector& lo, CoordVector& hi) {
    for (std::size_t c = 0; c < rank; ++c) lo[c] = hi[c] = ts.front().exponent[c];
    for (const Term& t : ts) {
      for (std::size_t c = 0; c < rank; ++c) {
        lo[c] = std::min(lo[c], t.exponent[c]);
        hi[c] = std::max(hi[c], t.exponent[c]);
      }
    }
  };
  bounds(xt, xlo, xhi);
  bounds(yt, ylo, yhi);
  Box box;
  box.lo.resize(rank);
  CoordVector hi(rank);
  box.stride.assign(rank, 0);
  const Index budget = std::min<Index>(kMaxVolume, 4 * static_cast<Index>(xt.size() * yt.size()) + 1024);
  Index volume = 1;
  for (std::size_t c = rank; c-- > 0;) {
    box.lo[c] = xlo[c] + ylo[c];
    hi[c] = xhi[c] + yhi[c];
    box.stride[c] = volume;
    const Index width = hi[c] - box.lo[c] + 1;
    if (width > budget / volume) return std::nullopt;
    volume *= width;
  }
  box.volume = volume;
  box.cut = cells_below(precision, box.lo, hi, box.stride, volume);
  // Offsets of x relative to xlo and of y relative to ylo add up to the
  // offset of the sum relative to lo.
  box.ix.reserve(xt.size());
  for (const Term& t : xt) box.ix.push_back(offset(t.exponent, xlo, box.stride));
  box.iy.reserve(yt.size());
  for (const Term& t : yt) box.iy.push_back(offset(t.exponent, ylo, box.stride));
  return box;
}

Exponent exponent_at(Index k, const Box& box) {
  CoordVector coords(box.lo.size());
  for (std::size_t c = 0; c < coords.size(); ++c) {
    coords[c] = box.lo[c] + k / box.stride[c];
    k %= box.stride[c];
  }
  return Exponent(std::move(coords));
}

// Accumulates every product with index in [first, last) and appends the
// nonzero cells, in order, to `out`.
void dense_range(const Series& x, const Series& y, const Box& box, Index first, Index last,
                 std::vector<Term>& out) {
  if (first >= last) return;
  std::vector<std::optional<Coefficient>> cells(static_cast<std::size_t>(last - first));
  const auto& xt = x.terms();
  const auto& yt = y.terms();
  for (std::size_t i = 0; i < xt.size(); ++i) {
    const Index base = box.ix[i];
    // iy is increasing because y is sorted.
    auto j = std::lower_bound(box.iy.begin(), box.iy.end(), first - base);
    for (; j != box.iy.end() && base + *j < last; ++j) {
      auto& cell = cells[static_cast<std::size_t>(base + *j - first)];
      const Coefficient prod = xt[i].coeff * yt[static_cast<std::size_t>(j - box.iy.begin())].coeff;
      if (cell) {
        *cell += prod;
      } else {
        cell = prod;
      }
    }
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k] && !cells[k]->is_zero()) {
      out.push_back({exponent_at(first + static_cast<Index>(k), box), std::move(*cells[k])});
    }
  }
}

std::vector<Term> sparse_product(const Series& x, const Series& y, const Exponent& precision) {
  std::map<Exponent, Coefficient> acc;
  for (const Term& xi : x.terms()) {
    for (const Term& yj : y.terms()) {
      Exponent e = xi.exponent + yj.exponent;
      if (!(e < precision)) break;
      const Coefficient prod = xi.coeff * yj.coeff;
      auto [it, inserted] = acc.try_emplace(std::move(e), prod);
      if (!inserted) it->second += prod;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.push_back({e, std::move(c)});
  }
  return out;
}

constexpr std::size_t kParallelWork = 4096;

}  // namespace

Series mul_serial(const Series& x, const Series& y, const Exponent& cap) {
  const Exponent precision = min(product_precision(x, y), cap);
  std::vector<Term> terms;
  if (const auto box = dense_box(x, y, precision)) {
    dense_range(x, y, *box, 0, std::min(box->cut, box->volume), terms);
  } else {
    terms = sparse_product(x, y, precision);
  }
  return Series(x.field_, x.rank_, std::move(terms), precision);
}

Series mul_parallel(const Series& x, const Series& y, const Exponent& cap) {
  const Exponent precision = min(product_precision(x, y), cap);
  if (x.terms_.size() * y.terms_.size() < kParallelWork) {
    return mul_serial(x, y, precision);
  }
  const auto box = dense_box(x, y, precision);
  if (!box) {
    // The ordered map is inherently sequential; large sparse boxes are rare.
    return mul_serial(x, y, precision);
  }
  // Threads own disjoint index ranges of the output, concatenated in order.
  const Index end = std::min(box->cut, box->volume);
  const auto blocks = static_cast<std::ptrdiff_t>(4 * omp_get_max_threads());
  std::vector<std::vector<Term>> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const Index first = end * b / blocks;
    const Index last = end * (b + 1) / blocks;
    dense_range(x, y, *box, first, last, partial[static_cast<std::size_t>(b)]);
  }
  std::vector<Term> terms;
  for (auto& block : partial) std::move(block.begin(), block.end(), std::back_inserter(terms));
  return Series(x.field_, x.rank_, std::move(terms), precision);
}

Series mul_serial(const Series& x, const Series& y) {
  return mul_serial(x, y, Exponent::infinity(x.rank()));
}

Series mul_parallel(const Series& x, const Series& y) {
  return mul_parallel(x, y, Exponent::infinity(x.rank()));
}

Series mul_truncated(const Series& x, const Series& y, const Exponent& cap) { return mul_parallel(x, y, cap); }

}  // namespace henselium
