#include "pqf/protocol.hpp"

#include "pqf/errors.hpp"
#include "pqf/relation.hpp"
#include "pqf/config.hpp"

#include <algorithm>
#include <cmath>

namespace pqf {

namespace {

long bits_for(const Real &eps, long override_bits) {
    if (override_bits > 0) {
        return override_bits;
    }
    const double b = std::max(1.0, -std::log2(eps.to_double()));
    return std::max(working_precision(), precision_for_eps(b));
}

template <class F>
auto attributed(const std::string &where, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const AssumptionFailure &e) {
        throw AssumptionFailure(where + ": " + e.what());
    } catch (const PrecisionExhausted &e) {
        throw PrecisionExhausted(where + ": " + e.what());
    } catch (const IterationCap &e) {
        throw IterationCap(where + ": " + e.what());
    } catch (const VerificationFailure &e) {
        throw VerificationFailure(where + ": " + e.what());
    }
}

Real arg(const ComplexInterval &z) {
    Real out;
    const Real re = z.re.mid();
    const Real im = z.im.mid();
    mpfr_atan2(out.get(), im.get(), re.get(), MPFR_RNDN);
    return out;
}

// Reduce to (-pi, pi].
Real wrap(const Real &t) {
    const Real two_pi = Real(2L) * Real::pi();
    Real r = t - Real((t / two_pi).round()) * two_pi;
    if (r <= -Real::pi()) {
        r += two_pi;
    } else if (r > Real::pi()) {
        r -= two_pi;
    }
    return r;
}

// diag(x, y) / |x| as an enclosure; |x| = |y| is assumed.
CMat2 unit_diag(const CycInt &x, const CycInt &y) {
    const ComplexInterval ex = eval_complex(x);
    const ComplexInterval ey = eval_complex(y);
    const ComplexInterval n{abs(ex), Interval(0L)};
    const ComplexInterval zero{Interval(0L), Interval(0L)};
    return {ex / n, zero, zero, ey / n};
}

CMat2 identity2() {
    const ComplexInterval one{Interval(1L), Interval(0L)};
    const ComplexInterval zero{Interval(0L), Interval(0L)};
    return {one, zero, zero, one};
}

mpz_class nu2_of(RingOrder m) { return m == RingOrder::M4 ? 5 : 2; }

Interval nu2_pow_interval(RingOrder m, long L) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), nu2_of(m).get_mpz_t(), static_cast<unsigned long>(L));
    return Interval(v);
}

// Fills p_success, failure_phase and cost of a round from its circuit and checks the
// outcome-0 branch against the round's own target.
void derive_round(Round &rd, const Real &eps) {
    const ExactMatrix M = eval_circuit(rd.circuit).reduced();
    if (!(norm_sq(M.a) == norm_sq(M.d))) {
        throw VerificationFailure("round success probability depends on the input state");
    }
    rd.p_success = (eval_complex(M.a).norm_sq() / nu2_pow_interval(M.m, M.L)).lo();
    if (rd.p_success > Real(1L)) {
        rd.p_success = Real(1L);
    }
    rd.failure_phase = M.c.is_zero() ? Real(0L) : arg(eval_complex(M.b) * eval_complex(M.c).conj());
    rd.cost = rd.circuit.cost();
    const Real d0 = trace_distance(unit_diag(M.a, M.d), lambda_phase(rd.theta));
    if (!(d0 <= eps)) {
        throw VerificationFailure("outcome-0 operator misses the round target");
    }
    rd.failure_terminal = false;
    if (!M.c.is_zero()) {
        const Real d1 = trace_distance(lambda_phase(rd.failure_phase), lambda_phase(rd.theta));
        rd.failure_terminal = d1 <= eps;
    }
}

ExactMatrix4 mul4(const ExactMatrix4 &A, const ExactMatrix4 &B) {
    ExactMatrix4 C;
    C.m = A.m;
    C.L = A.L + B.L;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CycInt s(A.m);
            for (int t = 0; t < 4; ++t) {
                s += A.e[static_cast<std::size_t>(i * 4 + t)] * B.e[static_cast<std::size_t>(t * 4 + j)];
            }
            C.e[static_cast<std::size_t>(i * 4 + j)] = s;
        }
    }
    return C;
}

ExactMatrix4 zero4(RingOrder m) {
    ExactMatrix4 Z;
    Z.m = m;
    Z.e.fill(CycInt(m));
    return Z;
}

} // namespace

std::pair<Real, Circuit> reduce_angle(const Real &theta, Basis basis) {
    const auto [tr, j] = split_root_of_unity(theta, basis_ring(basis));
    return {tr, Circuit{basis, phase_tokens(basis, j)}};
}

Round build_round(const Real &theta, const Real &eps, Basis basis, const ProtocolConfig &cfg) {
    if (!(eps.sign() > 0 && eps <= Real(1e-2))) {
        throw PreconditionViolated("a probabilistic round needs eps in (0, 1e-2]");
    }
    PrecisionScope scope(bits_for(eps, cfg.precision_bits));
    const RingOrder m = basis_ring(basis);
    const auto [tr, j] = split_root_of_unity(theta, m);

    Round rd;
    rd.theta = theta;
    const PhaseApprox pa = attributed("stage 1", [&] { return approx_phase(PhaseTarget{tr, eps}, m); });
    rd.stats.pslq_iterations = pa.iterations;
    rd.stats.z_abs = abs(eval_complex(pa.z)).mid();
    const CycInt z = rescale_floor(pa.z, eps);
    const ModifierResult mr = attributed("stage 2", [&] { return find_modifier(z, cfg.modifier); });
    rd.stats.L1 = mr.L1;
    rd.stats.slack = mr.slack;
    rd.stats.candidates_tried = mr.candidates_tried;

    rd.unitary = ExactUnitary{m, mr.r.embed() * z, mr.y, mr.L_r, static_cast<int>(j)};
    rd.unitary.validate();
    rd.circuit = synth_exact(rd.unitary);
    attributed("stage 4", [&] {
        if (!equal_up_to_phase(eval_circuit(rd.circuit), rd.unitary.matrix())) {
            throw VerificationFailure("synthesized circuit does not evaluate to the round unitary");
        }
        derive_round(rd, eps);
        return 0;
    });
    return rd;
}

Real failure_angle(const Round &round) { return wrap(round.theta - round.failure_phase); }

CostMoments cost_moments(const std::vector<Real> &round_cost, const std::vector<Real> &p_success,
                         const std::vector<bool> &failure_terminal, const Real &fallback_cost) {
    Real E = fallback_cost;
    Real S = fallback_cost * fallback_cost;
    for (std::size_t idx = round_cost.size(); idx-- > 0;) {
        const Real &C = round_cost[idx];
        const Real q = Real(1L) - p_success[idx];
        if (failure_terminal[idx]) {
            E = C;
            S = C * C;
        } else {
            // E_j = C + q E_{j+1},  S_j = C^2 + q (2 C E_{j+1} + S_{j+1})
            const Real En = C + q * E;
            S = C * C + q * (Real(2L) * C * E + S);
            E = En;
        }
    }
    return {E, S, S - E * E};
}

CostMoments cost_moments(const PqfProtocol &proto) {
    std::vector<Real> c, p;
    std::vector<bool> t;
    for (const auto &r : proto.rounds) {
        c.emplace_back(r.cost);
        p.push_back(r.p_success);
        t.push_back(r.failure_terminal);
    }
    return cost_moments(c, p, t, Real(proto.fallback.cost()));
}

ExactMatrix4 two_qubit_form(const ExactMatrix &W) {
    const RingOrder m = W.m;
    const CycInt one = CycInt::from_int(m, 1);
    // CNOT with the primary qubit (high index bit) as control
    ExactMatrix4 cnot = zero4(m);
    cnot.e[0] = one;
    cnot.e[5] = one;
    cnot.e[11] = one;
    cnot.e[14] = one;
    ExactMatrix4 iw = zero4(m);
    iw.L = W.L;
    for (int blk = 0; blk < 2; ++blk) {
        const int o = blk * 2;
        iw.e[static_cast<std::size_t>(o * 4 + o)] = W.a;
        iw.e[static_cast<std::size_t>(o * 4 + o + 1)] = W.b;
        iw.e[static_cast<std::size_t>((o + 1) * 4 + o)] = W.c;
        iw.e[static_cast<std::size_t>((o + 1) * 4 + o + 1)] = W.d;
    }
    ExactMatrix4 U = mul4(mul4(cnot, iw), cnot);
    const std::array<CycInt, 4> top{W.a, W.b, W.c, W.d};
    const std::array<CycInt, 4> bottom{W.d, W.c, W.b, W.a}; // X W X
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const CycInt &x = U.e[static_cast<std::size_t>(i * 4 + j)];
            if ((i < 2) != (j < 2)) {
                if (!x.is_zero()) {
                    throw InternalError("two-qubit form is not block diagonal");
                }
            } else {
                const auto &blk = i < 2 ? top : bottom;
                if (!(x == blk[static_cast<std::size_t>((i % 2) * 2 + (j % 2))])) {
                    throw InternalError("two-qubit form blocks differ from W and XWX");
                }
            }
        }
    }
    return U;
}

ExactMatrix branch_operator(const ExactMatrix4 &U, int outcome) {
    auto at = [&](int pr, int pc) { return U.e[static_cast<std::size_t>((2 * pr + outcome) * 4 + 2 * pc)]; };
    return ExactMatrix{U.m, at(0, 0), at(0, 1), at(1, 0), at(1, 1), U.L};
}

Real verify_protocol(PqfProtocol &proto) {
    PrecisionScope scope(bits_for(proto.eps, 0));
    const Real &eps = proto.eps;
    Real worst(0L);
    auto check = [&](const CMat2 &op, const char *what) {
        const Real d = trace_distance(op, lambda_phase(proto.theta));
        if (!(d <= eps)) {
            throw VerificationFailure(std::string(what) + " misses the target precision");
        }
        worst = max(worst, d);
    };
    CMat2 acc = identity2();
    Real cur = proto.theta;
    bool ended = false;
    for (std::size_t j = 0; j < proto.rounds.size(); ++j) {
        if (ended) {
            throw VerificationFailure("round after a terminal failure branch");
        }
        Round &rd = proto.rounds[j];
        rd.theta = cur;
        derive_round(rd, eps);
        const ExactMatrix4 U = two_qubit_form(eval_circuit(rd.circuit).reduced());
        const ExactMatrix op0 = branch_operator(U, 0);
        const ExactMatrix op1 = branch_operator(U, 1);
        check(unit_diag(op0.a, op0.d) * acc, "success branch");
        if (op1.a.is_zero()) {
            ended = true; // p = 1: the failure branch never happens
            continue;
        }
        acc = unit_diag(op1.a, op1.d) * acc;
        cur = failure_angle(rd);
        if (rd.failure_terminal) {
            check(acc, "terminal failure branch");
            ended = true;
        }
    }
    if (!ended) {
        const ExactMatrix F = eval_circuit(proto.fallback);
        check(enclose(F) * acc, "fallback branch");
    }
    const CostMoments mom = cost_moments(proto);
    proto.expected_cost = mom.mean;
    proto.cost_variance = mom.variance;
    return worst;
}

PqfProtocol build_pqf(const Real &theta, const Real &eps, long k_rounds, Basis basis, const ProtocolConfig &cfg,
                      std::optional<long> exact_power) {
    if (k_rounds < 0) {
        throw PreconditionViolated("k_rounds must be >= 0");
    }
    PrecisionScope scope(bits_for(eps, cfg.precision_bits));
    PqfProtocol P;
    P.basis = basis;
    P.theta = theta;
    P.eps = eps;
    const RingOrder m = basis_ring(basis);
    if (exact_power) {
        const Circuit pre{basis, phase_tokens(basis, *exact_power)};
        P.prefix_gate = pre.str();
        P.fallback = synth_exact(ExactUnitary::from_matrix(eval_circuit(pre)));
        verify_protocol(P);
        return P;
    }
    Real cur = theta;
    bool ended = false;
    for (long j = 0; j < k_rounds && !ended; ++j) {
        Round rd = attributed("round " + std::to_string(j + 1), [&] { return build_round(cur, eps, basis, cfg); });
        ended = rd.failure_terminal || rd.p_success >= Real(1L);
        cur = failure_angle(rd);
        P.rounds.push_back(std::move(rd));
    }
    if (!ended) {
        const FallbackResult fb = attributed("fallback", [&] { return fallback_approx(cur, eps, m, cfg.fallback); });
        P.fallback = fb.circuit;
        P.fallback_candidates = fb.candidates_tried;
    } else {
        P.fallback = Circuit{basis, {}};
    }
    verify_protocol(P);
    return P;
}

PqfProtocol protocol_from_circuits(Basis basis, const Real &theta, const Real &eps,
                                   const std::vector<std::string> &round_circuits, const std::string &fallback_circuit) {
    PqfProtocol P;
    P.basis = basis;
    P.theta = theta;
    P.eps = eps;
    for (const auto &s : round_circuits) {
        Round rd;
        rd.circuit = Circuit::parse(basis, s);
        rd.unitary = ExactUnitary::from_matrix(eval_circuit(rd.circuit));
        P.rounds.push_back(std::move(rd));
    }
    P.fallback = Circuit::parse(basis, fallback_circuit);
    verify_protocol(P);
    return P;
}

SimReport simulate(const PqfProtocol &proto, long trials, std::uint64_t seed) {
    if (trials < 1) {
        throw PreconditionViolated("trials must be >= 1");
    }
    PrecisionScope scope(bits_for(proto.eps, 0));
    const std::size_t k = proto.rounds.size();
    std::vector<double> p(k);
    std::vector<long> cost(k);
    std::vector<bool> term(k);
    for (std::size_t j = 0; j < k; ++j) {
        p[j] = proto.rounds[j].p_success.to_double();
        cost[j] = proto.rounds[j].cost;
        term[j] = proto.rounds[j].failure_terminal;
    }
    const long fb_cost = proto.fallback.cost();

    // distance of every branch operator, computed once
    std::vector<Real> success_dist(k);
    Real tail_dist(0L);
    {
        CMat2 acc = identity2();
        for (std::size_t j = 0; j < k; ++j) {
            const ExactMatrix4 U = two_qubit_form(eval_circuit(proto.rounds[j].circuit).reduced());
            const ExactMatrix op0 = branch_operator(U, 0);
            const ExactMatrix op1 = branch_operator(U, 1);
            success_dist[j] = trace_distance(unit_diag(op0.a, op0.d) * acc, lambda_phase(proto.theta));
            if (!op1.a.is_zero()) {
                acc = unit_diag(op1.a, op1.d) * acc;
            }
            if (term[j]) {
                tail_dist = trace_distance(acc, lambda_phase(proto.theta));
            }
        }
        if (k == 0 || !term[k - 1]) {
            tail_dist = trace_distance(enclose(eval_circuit(proto.fallback)) * acc, lambda_phase(proto.theta));
        }
    }

    SimReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.round_successes.assign(k, 0);
    rep.max_distance = Real(0L);
    SplitMix64 g(seed);
    long double sum = 0, sum_sq = 0;
    std::vector<bool> success_seen(k, false);
    bool tail_seen = false;
    for (long t = 0; t < trials; ++t) {
        long c = 0;
        long segments = 0;
        bool done = false;
        for (std::size_t j = 0; j < k && !done; ++j) {
            c += cost[j];
            ++segments;
            if (g.uniform() < p[j]) {
                rep.round_successes[j]++;
                success_seen[j] = true;
                done = true;
            } else if (term[j]) {
                tail_seen = true;
                done = true;
            }
        }
        if (!done) {
            c += fb_cost;
            ++segments;
            rep.fallback_runs++;
            tail_seen = true;
        }
        rep.max_segments = std::max(rep.max_segments, segments);
        sum += c;
        sum_sq += static_cast<long double>(c) * c;
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (success_seen[j]) {
            rep.max_distance = max(rep.max_distance, success_dist[j]);
        }
    }
    if (tail_seen) {
        rep.max_distance = max(rep.max_distance, tail_dist);
    }
    const long double n = static_cast<long double>(trials);
    const long double mean = sum / n;
    const long double var = trials > 1 ? (sum_sq - n * mean * mean) / (n - 1) : 0.0L;
    rep.mean_cost = Real(static_cast<double>(mean));
    rep.cost_variance = Real(static_cast<double>(var));
    const CostMoments mom = cost_moments(proto);
    rep.mean_stderr = sqrt(max(Real(0L), mom.variance) / Real(trials));
    return rep;
}

} // namespace pqf
