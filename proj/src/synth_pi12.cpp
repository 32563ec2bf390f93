#include "pqf/errors.hpp"
#include "pqf/exact.hpp"

namespace pqf {

namespace {

struct Reduction {
    std::vector<int> steps; // j of each H Lambda(w^j), in application order
    long phase24 = 0;       // U = e^{i pi phase24 / 12} * (steps)^{-1} * final
    ExactMatrix final;
};

enum Case { kEven = 0, kO1 = 1, kO2 = 2, kO3O3 = 3, kO3O0 = 4 };

Reduction reduce_pi12(ExactMatrix M, Pi12CaseCounts *cases) {
    const RingOrder m = RingOrder::M12;
    const CycInt one_plus_i(m, {1, 0, 0, 1});
    Reduction red;
    auto hit = [&](Case c) {
        if (cases != nullptr) {
            cases->hits[c]++;
        }
    };
    while (M.L > 0) {
        const ParityClass pa = parity_mu(M.a);
        const ParityClass pc = parity_mu(M.c);
        if (pa.orbit == Orbit::O0 && pc.orbit == Orbit::O0) {
            if (M.L < 2) {
                throw InternalError("even column at L = 1");
            }
            M = {m, *M.a.div_exact(2), *M.b.div_exact(2), *M.c.div_exact(2), *M.d.div_exact(2), M.L - 2};
            hit(kEven);
            continue;
        }
        const bool a3c0 = pa.orbit == Orbit::O3 && pc.orbit == Orbit::O0;
        const bool a0c3 = pa.orbit == Orbit::O0 && pc.orbit == Orbit::O3;
        if (a3c0 || a0c3) {
            // (1+i)/sqrt2 * I is pulled out as a global phase
            auto q = [&](const CycInt &x) {
                auto r = div_exact(x, one_plus_i);
                if (!r) {
                    throw InternalError("(3,0) case entry not divisible by 1+i");
                }
                return *r;
            };
            M = {m, q(M.a), q(M.b), q(M.c), q(M.d), M.L - 1};
            red.phase24 += 3;
            hit(kO3O0);
            continue;
        }
        if (pa.orbit != pc.orbit) {
            throw InternalError("column parities lie in incompatible orbits");
        }
        int j = -1;
        for (int k = 0; k < 12; ++k) {
            if (residue_mul_zeta(m, pc.residue, k) == pa.residue) {
                j = k;
                break;
            }
        }
        if (j < 0) {
            throw InternalError("no w^k aligning the column parities");
        }
        const CycInt w = CycInt::zeta_pow(m, j);
        // H Lambda(w^j): rows (a + w^j c, a - w^j c) / sqrt2, then divide by 2
        ExactMatrix N{m, M.a + w * M.c, M.b + w * M.d, M.a - w * M.c, M.b - w * M.d, M.L + 1};
        auto h = [&](const CycInt &x) {
            auto r = x.div_exact(2);
            if (!r) {
                throw InternalError("H Lambda step did not clear a factor of 2");
            }
            return *r;
        };
        M = {m, h(N.a), h(N.b), h(N.c), h(N.d), N.L - 2};
        red.steps.push_back(j);
        hit(pa.orbit == Orbit::O1 ? kO1 : (pa.orbit == Orbit::O2 ? kO2 : kO3O3));
    }
    red.final = M;
    return red;
}

} // namespace

Circuit reduce_column_pi12(const ExactMatrix &M, Pi12CaseCounts *cases) {
    if (M.m != RingOrder::M12) {
        throw PreconditionViolated("reduce_column_pi12 needs m = 12");
    }
    const Reduction red = reduce_pi12(M, cases);
    Circuit c{Basis::PI12, {}};
    for (int j : red.steps) {
        for (auto &t : phase_tokens(Basis::PI12, j)) {
            c.gates.push_back(t);
        }
        c.gates.emplace_back("H");
    }
    // the remaining monomial has first column (w^p, 0) or (0, w^p)
    if (red.final.a.is_zero()) {
        c.gates.emplace_back("X");
    }
    return c;
}

Circuit synth_pi12(const ExactUnitary &u, Pi12CaseCounts *cases) {
    if (u.m != RingOrder::M12) {
        throw PreconditionViolated("synth_pi12 needs m = 12");
    }
    u.validate();
    const Reduction red = reduce_pi12(u.matrix(), cases);
    Circuit c = monomial_circuit(Basis::PI12, red.final);
    for (auto it = red.steps.rbegin(); it != red.steps.rend(); ++it) {
        c.gates.emplace_back("H");
        for (auto &t : phase_tokens(Basis::PI12, -*it)) {
            c.gates.push_back(t);
        }
    }
    for (auto &t : global_phase_tokens(Basis::PI12, red.phase24)) {
        c.gates.push_back(t);
    }
    if (c.cost() > u.L + 2) {
        throw InternalError("pi/12 synthesis exceeded K-count L + 2");
    }
    return c;
}

} // namespace pqf
