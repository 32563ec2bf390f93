#pragma once

// Two-dimensional grid problems in Z[sqrt d], d = 2 or 3.

#include "pqf/real.hpp"
#include "pqf/rings.hpp"

namespace pqf {

/// Ring order whose real subring is Z[sqrt d].
RingOrder ring_for_sqrt(int d);

/// Fundamental unit 1+sqrt2 or 2+sqrt3 as a Real.
Real unit_value(int d);

/// Some alpha = a + b sqrt d with alpha in [x0, x1] and alpha^bullet in [y0, y1].
/// Requires (x1 - x0)(y1 - y0) >= v^2 with v the fundamental unit. Among the solutions
/// of the unit-balanced problem, the one with smallest |b| then smallest |a| is returned.
/// Membership is verified with interval arithmetic.
RealCycInt grid_point(const Real &x0, const Real &x1, const Real &y0, const Real &y1, int d);

} // namespace pqf
