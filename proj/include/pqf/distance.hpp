#pragma once

// Rigorous global-phase-invariant distances between 2x2 unitaries.
//
// d(A, B) = sqrt(1 - |tr(A^dagger B)| / 2). For A = diag(u, u^*)/|u| against Rz(theta)
// this is sqrt(1 - |Re(u e^{i theta/2})| / |u|).

#include "pqf/exact.hpp"
#include "pqf/real.hpp"

namespace pqf {

struct CMat2 {
    ComplexInterval a, b, c, d;

    CMat2 operator*(const CMat2 &o) const;
    CMat2 dagger() const;
};

/// Enclosure of the matrix (1/nu^L)[[a, b], [c, d]].
CMat2 enclose(const ExactMatrix &M);
/// Lambda(e^{i theta}) = diag(1, e^{i theta}).
CMat2 lambda_phase(const Real &theta);
/// Hadamard.
CMat2 hadamard();

/// Upper bound on d(A, B).
Real trace_distance(const CMat2 &A, const CMat2 &B);
/// Upper bound on d(M, Lambda(e^{i theta})).
Real phase_distance(const ExactMatrix &M, const Real &theta);

} // namespace pqf
