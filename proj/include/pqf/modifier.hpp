#pragma once

// Stage 2: real modifier r making |y|^2 = nu^{2 L_r} - |r z|^2 easily solvable with a
// high success probability |rz|^2 / nu^{2 L_r}.

#include "pqf/normeq.hpp"
#include "pqf/real.hpp"
#include "pqf/rings.hpp"

#include <functional>

namespace pqf {

struct ModifierConfig {
    long budget_per_l1 = 64; ///< candidates allowed = budget_per_l1 * L1
    FactorConfig factor;
};

struct ModifierResult {
    RealCycInt r;
    CycInt y;
    long L_r = 0;
    Real p_r;
    long candidates_tried = 0;
    long L1 = 0;
    Real slack; ///< L1 - log2|z|^2 (m = 8, 12) or L1 - log_sqrt5|z| (m = 4)
};

/// Smallest L with |z|^2 <= nu^{2L} (decided exactly).
long ceil_log_nu2(const CycInt &z);

/// nu^{2L} as an element of Z[rho]: 2^L or 5^L.
RealCycInt nu_pow2(RingOrder m, long L);

/// |r z|^2 / nu^{2 L_r}, rounded down.
Real success_probability(const RealCycInt &r, const CycInt &z, long L_r);

/// Positive integers r with log_sqrt5(r) mod 1 in (lambda - 1/L1, lambda), scanned over
/// I_k for k >= ceil(log_sqrt5 L1). visit returns false to stop the scan.
void enumerate_candidates_v(const CycInt &z, const std::function<bool(const mpz_class &r, long k)> &visit);

/// Window search over r in Z[rho] (m = 8, 12) or the m = 4 integer scan. Throws AssumptionFailure
/// when the candidate budget runs out.
ModifierResult find_modifier(const CycInt &z, const ModifierConfig &cfg = {});

} // namespace pqf
