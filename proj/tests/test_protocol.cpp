#include "pqf/config.hpp"
#include "pqf/errors.hpp"
#include "pqf/modifier.hpp"
#include "pqf/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace pqf;

namespace {

using C = std::complex<double>;

C val(const CycInt &z, long L, RingOrder m) {
    const double t = 2.0 * M_PI / as_int(m);
    C s = 0;
    for (int j = 0; j < z.dim(); ++j) {
        s += z[j].get_d() * std::polar(1.0, t * j);
    }
    const double nu = m == RingOrder::M4 ? std::sqrt(5.0) : std::sqrt(2.0);
    return s / std::pow(nu, static_cast<double>(L));
}

ExactMatrix random_exact(SplitMix64 &g, Basis b) {
    const char *t[] = {"H", "T", "S", "X"};
    const char *p[] = {"H", "K(1)", "K(2)", "X"};
    const char *v[] = {"VX", "VYdg", "VZ", "S"};
    Circuit c{b, {}};
    for (int i = 0; i < 25; ++i) {
        const char *const *a = b == Basis::T ? t : (b == Basis::PI12 ? p : v);
        c.gates.emplace_back(a[g.next() % 4]);
    }
    return eval_circuit(c);
}

// Distance of a diagonal branch operator, rescaled to a unitary, from Lambda(e^{i t}).
double branch_distance(const ExactMatrix &B, const Real &t) {
    const CMat2 e = enclose(B);
    const ComplexInterval n{abs(e.a), Interval(0L)};
    const ComplexInterval zero{Interval(0L), Interval(0L)};
    return trace_distance(CMat2{e.a / n, zero, zero, e.d / n}, lambda_phase(t)).to_double();
}

} // namespace

TEST(TwoQubit, IdentityAndBlocks) {
    const ExactMatrix4 I = two_qubit_form(ExactMatrix::identity(RingOrder::M8));
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            EXPECT_EQ(I.e[static_cast<std::size_t>(4 * r + c)], CycInt::from_int(RingOrder::M8, r == c ? 1 : 0));
        }
    }
    SplitMix64 g(41);
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        const ExactMatrix W = random_exact(g, b);
        const ExactMatrix4 U = two_qubit_form(W);
        ASSERT_EQ(U.L, W.L);
        // index = 2 * primary + ancilla: the primary-0 block acts on the ancilla as W,
        // so the ancilla-0 blocks read off W restricted by the primary value
        const auto at = [&](int r, int c) { return U.e[static_cast<std::size_t>(4 * r + c)]; };
        EXPECT_EQ(at(0, 0), W.a);
        EXPECT_EQ(at(0, 1), W.b);
        EXPECT_EQ(at(1, 0), W.c);
        EXPECT_EQ(at(1, 1), W.d);
        // XWX
        EXPECT_EQ(at(2, 2), W.d);
        EXPECT_EQ(at(2, 3), W.c);
        EXPECT_EQ(at(3, 2), W.b);
        EXPECT_EQ(at(3, 3), W.a);
        EXPECT_TRUE(at(0, 2).is_zero() && at(1, 3).is_zero() && at(2, 0).is_zero() && at(3, 1).is_zero());
    }
}

TEST(TwoQubit, MeasurementGivesDiagonalBranches) {
    SplitMix64 g(42);
    const ExactMatrix W = random_exact(g, Basis::T);
    const ExactMatrix4 U = two_qubit_form(W);
    for (int trial = 0; trial < 3; ++trial) {
        const C a(g.uniform() - 0.5, g.uniform() - 0.5), b(g.uniform() - 0.5, g.uniform() - 0.5);
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        const C psi[4] = {a / n, 0, b / n, 0}; // |psi>|0>
        C out[4];
        for (int r = 0; r < 4; ++r) {
            out[r] = 0;
            for (int c = 0; c < 4; ++c) {
                out[r] += val(U.e[static_cast<std::size_t>(4 * r + c)], U.L, U.m) * psi[c];
            }
        }
        for (int outcome = 0; outcome < 2; ++outcome) {
            const ExactMatrix B = branch_operator(U, outcome);
            ASSERT_TRUE(B.b.is_zero() && B.c.is_zero());
            const C e0 = val(B.a, B.L, B.m) * psi[0], e1 = val(B.d, B.L, B.m) * psi[2];
            EXPECT_LT(std::abs(out[outcome] - e0), 1e-12);
            EXPECT_LT(std::abs(out[2 + outcome] - e1), 1e-12);
        }
        // outcome-0 probability does not depend on psi
        const double p0 = std::norm(out[0]) + std::norm(out[2]);
        EXPECT_NEAR(p0, std::norm(val(W.a, W.L, W.m)), 1e-12);
    }
}

TEST(Round, OutcomesAndFailureAngle) {
    SplitMix64 g(43);
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        for (int i = 0; i < 3; ++i) {
            const Real eps(1e-10);
            const PrecisionScope ps(precision_for_eps(34));
            const Real theta(g.uniform() * 3.0 - 1.5);
            const Round r = build_round(theta, eps, b);
            const ExactMatrix U = r.unitary.matrix();
            const ExactMatrix4 U4 = two_qubit_form(U);
            EXPECT_LE(branch_distance(branch_operator(U4, 0), theta), 1e-10);
            EXPECT_LE(branch_distance(branch_operator(U4, 1), r.failure_phase), 1e-20);
            // |a|^2 = x + y rho over nu^{2L}, in high precision
            const RealCycInt n2 = norm_sq(U.a);
            const Real rho = sqrt(Real(RealCycInt::rho_sq(U.m)));
            const Real p = (Real(n2.a()) + Real(n2.b()) * rho) / Real(nu_pow2(U.m, U.L).a());
            EXPECT_NEAR(r.p_success.to_double(), p.to_double(), 1e-12);
            EXPECT_LE(r.p_success, p);
            double expect = theta.to_double() - r.failure_phase.to_double();
            expect = std::remainder(expect, 2 * M_PI);
            EXPECT_NEAR(failure_angle(r).to_double(), expect, 1e-12);
            EXPECT_LE(std::abs(failure_angle(r).to_double()), M_PI + 1e-15);
            EXPECT_EQ(r.cost, r.circuit.cost());
        }
    }
}

TEST(CostModel, SingleRoundExample) {
    const CostMoments c = cost_moments({Real(10L)}, {Real(0.95)}, {false}, Real(40L));
    EXPECT_NEAR(c.mean.to_double(), 12.0, 1e-12);
    // outcomes: 10 w.p. 0.95, 50 w.p. 0.05
    EXPECT_NEAR(c.variance.to_double(), 0.95 * 4 + 0.05 * 38 * 38, 1e-9);
}

TEST(CostModel, CertainSuccessIsDegenerate) {
    const CostMoments c = cost_moments({Real(17L), Real(20L)}, {Real(1L), Real(0.9)}, {false, false}, Real(99L));
    EXPECT_NEAR(c.mean.to_double(), 17.0, 1e-15);
    EXPECT_NEAR(c.variance.to_double(), 0.0, 1e-12);
}

TEST(CostModel, TerminalFailureSkipsFallback) {
    const CostMoments c = cost_moments({Real(10L)}, {Real(0.5)}, {true}, Real(1000L));
    EXPECT_NEAR(c.mean.to_double(), 10.0, 1e-15);
}

TEST(Protocol, FallbackOnly) {
    const Real eps(1e-10);
    const PqfProtocol P = build_pqf(Real(0.7), eps, 0, Basis::T);
    EXPECT_TRUE(P.rounds.empty());
    EXPECT_NEAR(P.expected_cost.to_double(), static_cast<double>(P.fallback.cost()), 1e-12);
    EXPECT_NEAR(P.cost_variance.to_double(), 0.0, 1e-12);
    EXPECT_LE(phase_distance(eval_circuit(P.fallback), Real(0.7)).to_double(), 1e-10);
}

TEST(Protocol, ExactPhaseShortCircuit) {
    const PrecisionScope ps(128);
    const PqfProtocol P = build_pqf(Real::pi() / Real(4L), Real(1e-10), 2, Basis::T, {}, 1);
    EXPECT_EQ(P.prefix_gate, "T");
    EXPECT_TRUE(P.rounds.empty());
    EXPECT_EQ(P.fallback.cost(), 1);
}

TEST(Protocol, SecondRoundHelpsLittle) {
    SplitMix64 g(44);
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        const Real theta(g.uniform() * 1.5);
        const PqfProtocol P1 = build_pqf(theta, Real(1e-15), 1, b);
        const PqfProtocol P2 = build_pqf(theta, Real(1e-15), 2, b);
        EXPECT_GE(P2.expected_cost.to_double(), P1.expected_cost.to_double() - 5.0);
    }
}

TEST(Protocol, VerificationRejectsTamperedFallback) {
    PqfProtocol P = build_pqf(Real(0.4), Real(1e-10), 1, Basis::T);
    P.fallback = Circuit{Basis::T, {"H"}};
    if (!P.rounds.empty() && !P.rounds.back().failure_terminal) {
        EXPECT_THROW(verify_protocol(P), VerificationFailure);
    }
}

TEST(Protocol, RebuildFromCircuitText) {
    const PqfProtocol P = build_pqf(Real(0.9), Real(1e-10), 2, Basis::PI12);
    std::vector<std::string> rc;
    for (const auto &r : P.rounds) {
        rc.push_back(r.circuit.str());
    }
    const PqfProtocol Q = protocol_from_circuits(Basis::PI12, Real(0.9), Real(1e-10), rc, P.fallback.str());
    EXPECT_NEAR(Q.expected_cost.to_double(), P.expected_cost.to_double(), 1e-9);
}

TEST(Simulate, FrequenciesWithinBinomialBounds) {
    const PqfProtocol P = build_pqf(Real(1.1), Real(1e-10), 1, Basis::V);
    ASSERT_EQ(P.rounds.size(), 1u);
    const long n = 100000;
    const SimReport s = simulate(P, n, 7);
    const double p = P.rounds[0].p_success.to_double();
    const double sd = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(static_cast<double>(s.round_successes[0]), n * p, 3 * sd + 1);
    EXPECT_NEAR(s.mean_cost.to_double(), P.expected_cost.to_double(), 3 * s.mean_stderr.to_double() + 1e-12);
    EXPECT_LE(s.max_distance.to_double(), 1e-10);
    // same seed, same walk
    EXPECT_EQ(simulate(P, 1000, 9).mean_cost, simulate(P, 1000, 9).mean_cost);
}

TEST(Euler, HadamardAngles) {
    const PrecisionScope ps(192);
    const EulerResult e = euler_angles(hadamard());
    const CMat2 back = euler_matrix(e.alpha, e.beta, e.gamma, e.delta);
    EXPECT_LT(max_entry_error(back, hadamard()).to_double(), 1e-40);
}

TEST(Euler, RandomUnitaryCompiles) {
    const PrecisionScope ps(192);
    const CMat2 u = rz(Real(0.3)) * hadamard() * rz(Real(1.2)) * hadamard() * rz(Real(-0.8));
    const EulerResult e = euler_decompose(u, Real(1e-10), 1, Basis::T);
    ASSERT_EQ(e.protocols.size(), 3u);
    EXPECT_LT(max_entry_error(euler_matrix(e.alpha, e.beta, e.gamma, e.delta), u).to_double(), 1e-30);
}
