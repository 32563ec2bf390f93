#pragma once

// Desk-scale oracle checks used by `pqf selftest`.

#include <string>
#include <vector>

namespace pqf {

struct SelftestResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Runs every oracle suite; each entry reports one suite.
std::vector<SelftestResult> run_selftest();

/// Exhaustive search for y in Z[omega_8] with |y|^2 = a + b sqrt2.
bool brute_force_norm_eq8(long a, long b);
/// Exhaustive search for x^2 + y^2 = n.
bool brute_force_two_squares(long n);

} // namespace pqf
