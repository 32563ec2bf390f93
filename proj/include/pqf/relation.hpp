#pragma once

// Stage 1: approximate e^{i theta} by z^*/z with z cyclotomic.

#include "pqf/real.hpp"
#include "pqf/rings.hpp"

#include <functional>
#include <vector>

namespace pqf {

struct PhaseTarget {
    Real theta; ///< radians, in (-pi, pi]
    Real eps;   ///< in (0, 1)
};

struct PhaseApprox {
    CycInt z;
    Real achieved_error; ///< rigorous upper bound on |z^*/z - e^{i theta}|
    Real residual;       ///< F(a, x(theta)) = Im(z e^{i theta / 2})
    long iterations = 0;
};

/// x_j = sin(theta/2 + 2 pi j / m), j = 0..d-1, as enclosures.
std::vector<Interval> relation_coeffs(const Real &theta, RingOrder m);

using RelationStop = std::function<bool(const std::vector<mpz_class> &)>;

struct PslqResult {
    std::vector<mpz_class> a;
    long iterations = 0;
};

/// PSLQ (gamma = sqrt(4/3)) on x at the current working precision. Every column of the
/// inverse basis is offered to stop after each iteration; the first accepted one is
/// returned. Throws IterationCap after max_iter iterations and PrecisionExhausted when
/// the working precision can no longer separate candidates.
PslqResult pslq_find(const std::vector<Real> &x, const RelationStop &stop, long max_iter);

/// True when 2 |Im(z e^{i theta/2})| < eps |z| is certain; the bound is written to err.
bool phase_error_below(const CycInt &z, const Real &theta, const Real &eps, Real *err = nullptr);

/// PSLQ-based approximation for m = 8, 12 (precision doubled on demand).
PhaseApprox approx_phase(const PhaseTarget &target, RingOrder m);

/// Continued-fraction approximation for m = 4: z = a + b i with b/a a convergent of
/// -tan(theta/2).
PhaseApprox cf_phase(const PhaseTarget &target);

/// Multiply z by the smallest positive integer s with |s z| >= eps^{-1/(2d)}.
CycInt rescale_floor(const CycInt &z, const Real &eps);

} // namespace pqf
