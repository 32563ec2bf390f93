#pragma once

// Norm equations |y|^2 = xi over Z[zeta_m] and two-squares over Z[i].

#include "pqf/rings.hpp"

#include <optional>
#include <vector>

namespace pqf {

struct FactorConfig {
    long rho_budget = 1L << 16; ///< Pollard-rho iterations per equation
};

struct PrimeFactor {
    RealCycInt prime;
    int exponent = 0;
};

/// xi = unit * prod(prime^exponent) * cofactor, exactly.
struct LimitedFactorization {
    RealCycInt unit;
    std::vector<PrimeFactor> factors;
    RealCycInt cofactor; ///< 1 when the factorization is complete
    long budget_spent = 0;
    bool complete() const;
};

enum class PrimeClass { Good, Bad };
enum class NormEqStatus { Solved, ProvablyUnsolvable, NotEasy };

struct NormEqOutcome {
    NormEqStatus status = NormEqStatus::NotEasy;
    std::optional<CycInt> y;
    LimitedFactorization certificate;
};

LimitedFactorization limited_factor(const RealCycInt &xi, const FactorConfig &cfg = {});

/// Classification of a prime of Z[rho] (or a rational prime for m = 4).
/// sqrt2 (m = 8) counts as Good since 2 + sqrt2 = |1 + omega|^2 is a norm.
PrimeClass classify_prime(const RealCycInt &p);

/// Solve |y|^2 = xi for m in {8, 12}.
NormEqOutcome solve_norm_eq(const RealCycInt &xi, const FactorConfig &cfg = {});

/// Solve a^2 + b^2 = n; the result is returned as a Gaussian integer (m = 4).
NormEqOutcome solve_two_squares(const mpz_class &n, const FactorConfig &cfg = {});

} // namespace pqf
