#pragma once

// The decomposition v = v_Delta o vbar_Delta: coarse values, residue series
// in K v_Delta, and the check that both pieces reassemble v.

#include "henselium/exponent.hpp"
#include "henselium/series.hpp"

namespace henselium {

/// v_Delta(x) = project(v(x)); an unknown valuation projects to an unknown
/// coarse value bounded by the projected precision.
Valuation coarse_value(const Series& x, const ConvexSubgroup& delta);

/// x v_Delta as a rank-j series: the terms whose first n-j coordinates are
/// all zero, re-indexed by their Delta-component.
Series residue_series(const Series& x, const ConvexSubgroup& delta);

/// Lifts a rank-j residue series to rank n with a zero coarse prefix. This
/// is the canonical section K v_Delta -> K of the model.
Series embed_residue(const Series& residue, const ConvexSubgroup& delta);

struct ComposeReport {
  bool pass = false;
  Exponent valuation;
  Exponent head;
  Exponent tail;
  Valuation coarse;
  Valuation residue_valuation;
};

/// Rebuilds v(x) = (head, tail) from v_Delta(x) and the vbar_Delta-valuation
/// of the residue of x normalised to coarse value zero.
ComposeReport compose_check(const Series& x, const ConvexSubgroup& delta);

}  // namespace henselium
