#pragma once

// Exact single-qubit unitaries over Z[zeta_m][1/nu], gate words, and exact synthesis.
//
// Matrix convention: an ExactUnitary (m, z, y, L, ell) denotes
//     (1/nu^L) [[z, y w^ell], [-y^*, z^* w^ell]]
// i.e. [[z, y], [-y^*, z^*]] followed by a right-multiplied Lambda(w^ell).
// nu = sqrt2 for m = 8, 12 and sqrt5 for m = 4.
//
// Circuit text: whitespace-separated tokens, leftmost applied first.
//   T basis:    H T Tdg S Sdg X Y Z Wph(j)      Wph(j) = w8^j
//   pi/12:      H K(k) X Y Z Wph(j)             K(k) = Lambda(w12^k), Wph(j) = e^{i pi j / 12}
//   V basis:    H S X Y Z VX VXdg VY VYdg VZ VZdg Gph(g)   VP = (1 + 2iP)/sqrt5, Gph(g) = i^g

#include "pqf/rings.hpp"

#include <array>
#include <string>
#include <vector>

namespace pqf {

enum class Basis { T, PI12, V };

RingOrder basis_ring(Basis b);
std::string basis_name(Basis b);
Basis basis_from_name(const std::string &s);

/// (1/nu^L) [[a, b], [c, d]] with entries in Z[zeta_m].
struct ExactMatrix {
    RingOrder m = RingOrder::M8;
    CycInt a, b, c, d;
    long L = 0;

    static ExactMatrix identity(RingOrder m);
    ExactMatrix operator*(const ExactMatrix &o) const;
    ExactMatrix dagger() const;
    /// Same matrix with the smallest possible L.
    ExactMatrix reduced() const;
    /// Multiply by a scalar ring element.
    ExactMatrix scaled(const CycInt &s) const;
};

/// A * B^dagger is a scalar matrix, i.e. A = phase * B.
bool equal_up_to_phase(const ExactMatrix &A, const ExactMatrix &B);
/// Exact equality of the represented matrices.
bool equal_exact(const ExactMatrix &A, const ExactMatrix &B);

struct ExactUnitary {
    RingOrder m = RingOrder::M8;
    CycInt z, y;
    long L = 0;
    int ell = 0;

    /// Checks |z|^2 + |y|^2 = nu^{2L}; throws PreconditionViolated otherwise.
    void validate() const;
    ExactMatrix matrix() const;
    /// Inverse of matrix(); requires det = nu^{2L} w^ell for some ell.
    static ExactUnitary from_matrix(const ExactMatrix &M);
};

struct Circuit {
    Basis basis = Basis::T;
    std::vector<std::string> gates;

    /// Number of non-Clifford gates: T/Tdg, K(k) with k mod 3 != 0, or V-type gates.
    long cost() const;
    std::string str() const;
    static Circuit parse(Basis b, const std::string &text);
    void append(const Circuit &o);
};

/// Exact matrix of a single token (throws InvalidInput for unknown tokens).
ExactMatrix gate_matrix(Basis b, const std::string &token);
ExactMatrix eval_circuit(const Circuit &c);

/// Counts of the reduction cases (0,0), O1, O2, (3,3), (3,0)/(0,3) seen during a run.
struct Pi12CaseCounts {
    std::array<long, 5> hits{};
};

/// Circuit c with c * v = (1, 0)^T up to phase, for the first column v of M.
Circuit reduce_column_pi12(const ExactMatrix &M, Pi12CaseCounts *cases = nullptr);

Circuit synth_pi12(const ExactUnitary &u, Pi12CaseCounts *cases = nullptr);
Circuit synth_t(const ExactUnitary &u);
Circuit synth_v(const ExactUnitary &u);
/// Dispatch on u.m.
Circuit synth_exact(const ExactUnitary &u);

/// Canonical token(s) for Lambda(w^k) in the given basis.
std::vector<std::string> phase_tokens(Basis b, long k);
/// Global phase token for w^k (T, V) or e^{i pi k / 12} (pi12); empty when trivial.
std::vector<std::string> global_phase_tokens(Basis b, long k);
/// Exponent p with x == zeta^p, or -1 when x is not a root of unity of the ring.
int root_of_unity_exponent(const CycInt &x);
/// Circuit for an L = 0 monomial matrix (diagonal or anti-diagonal with root-of-unity entries).
Circuit monomial_circuit(Basis b, const ExactMatrix &M);

} // namespace pqf
