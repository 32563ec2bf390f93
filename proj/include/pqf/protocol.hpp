#pragma once

// Probabilistic rounds with fallback.
//
// A round embeds W = (1/nu^L)[[rz, y w^j], [-y^*, (rz)^* w^j]] in
//     U = CNOT (I x W) CNOT = [[W, 0], [0, X W X]]
// with the primary qubit as control and a |0> ancilla as target. Measuring the ancilla
// gives outcome 0 with probability |rz|^2 / nu^{2L} (for every input state), leaving
// diag(W00, W11) ~ Lambda(e^{i theta}), and outcome 1 otherwise, leaving
// diag(W10, W01) = Lambda(e^{i phi}). The next round then targets theta - phi.

#include "pqf/distance.hpp"
#include "pqf/exact.hpp"
#include "pqf/fallback.hpp"
#include "pqf/modifier.hpp"
#include "pqf/real.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqf {

struct ProtocolConfig {
    ModifierConfig modifier;
    FallbackConfig fallback;
    long precision_bits = 0; ///< 0: derived from eps
};

struct RoundStats {
    long pslq_iterations = 0;
    long L1 = 0;
    Real slack;
    long candidates_tried = 0;
    Real z_abs; ///< |z| of the stage-1 approximation
};

struct Round {
    Real theta;          ///< target angle of this round
    ExactUnitary unitary;
    Circuit circuit;     ///< single-qubit W
    Real p_success;      ///< lower enclosure of |W00|^2
    Real failure_phase;  ///< phi with diag(W10, W01) ~ Lambda(e^{i phi}), in (-pi, pi]
    long cost = 0;
    bool failure_terminal = false; ///< Lambda(e^{i phi}) is already eps-close to the target
    RoundStats stats;
};

struct PqfProtocol {
    Basis basis = Basis::T;
    Real theta, eps;
    std::vector<Round> rounds;
    Circuit fallback;
    long fallback_candidates = 0;
    std::string prefix_gate; ///< set when the target is an exact root-of-unity phase
    Real expected_cost;
    Real cost_variance;
};

/// theta = theta_r + 2 pi j / m; the prefix is the exact Lambda(w^j).
std::pair<Real, Circuit> reduce_angle(const Real &theta, Basis basis);

/// One probabilistic round for Lambda(e^{i theta}).
Round build_round(const Real &theta, const Real &eps, Basis basis, const ProtocolConfig &cfg = {});

/// theta - phi reduced to (-pi, pi].
Real failure_angle(const Round &round);

/// Full protocol with k_rounds probabilistic rounds and a fallback; k_rounds = 0 gives
/// the fallback alone. exact_power short-circuits exactly representable phases.
PqfProtocol build_pqf(const Real &theta, const Real &eps, long k_rounds, Basis basis, const ProtocolConfig &cfg = {},
                      std::optional<long> exact_power = std::nullopt);

/// First and second moments of the cost by backward recursion over the chain.
struct CostMoments {
    Real mean, second, variance;
};
CostMoments cost_moments(const std::vector<Real> &round_cost, const std::vector<Real> &p_success,
                         const std::vector<bool> &failure_terminal, const Real &fallback_cost);
CostMoments cost_moments(const PqfProtocol &proto);

/// 4x4 exact matrix (1/nu^L) E, row-major, index = 2 * primary + ancilla.
struct ExactMatrix4 {
    RingOrder m = RingOrder::M8;
    std::array<CycInt, 16> e;
    long L = 0;
};
ExactMatrix4 two_qubit_form(const ExactMatrix &W);
/// The primary-qubit operator left after measuring the ancilla with the given outcome.
ExactMatrix branch_operator(const ExactMatrix4 &U, int outcome);

/// Re-derives every round from its circuit and checks all branch composites against
/// Lambda(e^{i theta}); returns the largest distance. Throws VerificationFailure.
Real verify_protocol(PqfProtocol &proto);

/// Rebuilds a protocol from circuit text (for instance read back from JSON) and verifies it.
PqfProtocol protocol_from_circuits(Basis basis, const Real &theta, const Real &eps,
                                   const std::vector<std::string> &round_circuits, const std::string &fallback_circuit);

struct SimReport {
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<long> round_successes;   ///< trajectories ending with success in round j
    long fallback_runs = 0;
    Real mean_cost, cost_variance;       ///< empirical
    Real mean_stderr;                    ///< sqrt(exact variance / trials)
    long max_segments = 0;
    Real max_distance;                   ///< over all branches visited
};

SimReport simulate(const PqfProtocol &proto, long trials, std::uint64_t seed);

/// V = e^{i delta} Rz(alpha) H Rz(beta) H Rz(gamma), each axial factor compiled at eps/3.
struct EulerResult {
    Real alpha, beta, gamma, delta;
    bool degenerate = false; ///< input was diagonal; only alpha is used
    std::vector<PqfProtocol> protocols;
};

/// Angles only (no compilation).
EulerResult euler_angles(const CMat2 &u);
EulerResult euler_decompose(const CMat2 &u, const Real &eps, long k_rounds, Basis basis, const ProtocolConfig &cfg = {});
CMat2 euler_matrix(const Real &alpha, const Real &beta, const Real &gamma, const Real &delta);
/// Rz(t) = diag(e^{-i t/2}, e^{i t/2}).
CMat2 rz(const Real &t);
/// Largest entrywise deviation |A - B|, upper bound.
Real max_entry_error(const CMat2 &A, const CMat2 &B);

} // namespace pqf
