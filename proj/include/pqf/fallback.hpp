#pragma once

// Deterministic eps-approximation of Lambda(e^{i theta}) used as the last PQF round.
//
// For m = 8, 12 candidates u = alpha + beta i with alpha, beta in Z[rho] are produced
// strip by strip from the meniscus
//     R = { w : |w| <= 1, Re(w e^{i theta/2}) >= 1 - eps^2 },
// scaled by nu^k, with |u^bullet|^2 <= nu^{2k} enforced by the grid problems.
// For m = 4 the lattice points of nu^k R are enumerated directly.

#include "pqf/exact.hpp"
#include "pqf/normeq.hpp"
#include "pqf/real.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace pqf {

struct FeasibleCandidate {
    CycInt u;
    long k = 0;
    mpz_class index;
};

/// Smallest admissible round exponent for (eps, m).
long min_round_exponent(const Real &eps, RingOrder m);

/// True when u / nu^k satisfies the feasibility conditions at (theta, eps); decided
/// exactly for the norm bounds and with intervals for the real-part test.
bool is_feasible(const CycInt &u, long k, const Real &theta, const Real &eps);

/// Random-access source of distinct feasible candidates at round k.
class CandidateSet {
  public:
    /// theta must satisfy |theta| <= pi/2.
    CandidateSet(const Real &theta, const Real &eps, long k, RingOrder m);
    ~CandidateSet();
    CandidateSet(CandidateSet &&) noexcept;
    CandidateSet &operator=(CandidateSet &&) noexcept;

    RingOrder order() const;
    long k() const;
    /// Number of strips (m = 8, 12) or enumerated lattice points (m = 4).
    mpz_class size() const;
    /// Candidate j; nullopt when the grid problem of a strip has no verified solution.
    std::optional<FeasibleCandidate> at(const mpz_class &j) const;
    /// Vertical extent [y_min, y_max] of the strip region (m = 8, 12).
    std::pair<Real, Real> segment() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Draws indices of a CandidateSet uniformly without replacement.
class CandidateSampler {
  public:
    CandidateSampler(const CandidateSet &set, std::uint64_t seed);
    ~CandidateSampler();
    /// nullopt once the set is exhausted.
    std::optional<mpz_class> next();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct FallbackConfig {
    long budget_per_k = 16; ///< candidates allowed = budget_per_k * k
    std::uint64_t seed = 1;
    FactorConfig factor;
};

struct FallbackResult {
    Circuit circuit;
    ExactUnitary unitary;  ///< the approximating unitary before the exact prefix
    long prefix_power = 0; ///< Lambda(w^j) split off exactly
    long k = 0;
    long candidates_tried = 0;
    Real distance; ///< rigorous upper bound on d(circuit, Lambda(e^{i theta}))
};

/// theta = theta_r + 2 pi j / m with |theta_r| <= pi / m.
std::pair<Real, long> split_root_of_unity(const Real &theta, RingOrder m);

/// Cost bound enforced on every fallback circuit.
Real fallback_cost_bound(const Real &eps, RingOrder m);

/// Throws AssumptionFailure when no candidate within the budget has an easy norm
/// equation, and VerificationFailure if the result misses eps.
FallbackResult fallback_approx(const Real &theta, const Real &eps, RingOrder m, const FallbackConfig &cfg = {});

} // namespace pqf
