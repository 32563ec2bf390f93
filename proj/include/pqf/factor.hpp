#pragma once

// Budgeted integer factorization and modular square roots.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace pqf {

struct IntFactorization {
    std::vector<std::pair<mpz_class, int>> factors; ///< (prime, exponent), ascending
    mpz_class cofactor{1};                          ///< unfactored composite part, 1 if complete
    long work_spent = 0;                            ///< rho iterations used
    bool complete() const { return cofactor == 1; }
};

/// Primes below limit, ascending.
const std::vector<unsigned long> &small_primes(unsigned long limit = 1000);

/// Probabilistic primality (64 Miller-Rabin rounds on top of GMP's BPSW).
bool is_probable_prime(const mpz_class &n);

/// Trial division by primes < 1000, then Brent-Pollard rho bounded by rho_budget iterations
/// in total. Anything left unfactored ends up in cofactor.
IntFactorization factor_integer(const mpz_class &n, long rho_budget);

/// A square root of a modulo the odd prime p, if a is a quadratic residue.
bool sqrt_mod(const mpz_class &a, const mpz_class &p, mpz_class &root);

} // namespace pqf
