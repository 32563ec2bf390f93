#include "pqf/errors.hpp"
#include "pqf/exact.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pqf {

namespace {

constexpr RingOrder kM = RingOrder::M8;

// Smallest denominator exponent of |a|^2 / 2^L with respect to sqrt2.
long sde_abs2(const ExactMatrix &M) {
    if (M.a.is_zero()) {
        return 0;
    }
    RealCycInt n = norm_sq(M.a);
    const RealCycInt s2(kM, 0, 1);
    long val = 0;
    while (auto q = n.div_exact(s2)) {
        n = *q;
        ++val;
    }
    return 2 * M.L - val;
}

// H Lambda(w^k) M, reduced.
ExactMatrix syllable(int k, const ExactMatrix &M) {
    const CycInt w = CycInt::zeta_pow(kM, k);
    return ExactMatrix{kM, M.a + w * M.c, M.b + w * M.d, M.a - w * M.c, M.b - w * M.d, M.L + 1}.reduced();
}

long syllable_cost(int k) { return k % 2; }

struct Tail {
    std::vector<int> ks;
    long cost = std::numeric_limits<long>::max();
};

// Exhaustive search of up to `depth` more syllables reaching L = 0.
void search_tail(const ExactMatrix &M, int depth, std::vector<int> &path, long cost, Tail &best) {
    if (cost >= best.cost) {
        return;
    }
    if (M.L == 0) {
        // the terminal diagonal may still need one odd phase
        const bool diagonal = M.b.is_zero() && M.c.is_zero();
        const int p = root_of_unity_exponent(diagonal ? M.a : M.c);
        const int q = root_of_unity_exponent(diagonal ? M.d : M.b);
        const long total = cost + ((q - p) % 2 != 0 ? 1 : 0);
        if (total < best.cost) {
            best.cost = total;
            best.ks = path;
        }
        return;
    }
    if (depth == 0) {
        return;
    }
    for (int k = 0; k < 8; ++k) {
        path.push_back(k);
        search_tail(syllable(k, M), depth - 1, path, cost + syllable_cost(k), best);
        path.pop_back();
    }
}

} // namespace

Circuit synth_t(const ExactUnitary &u) {
    if (u.m != kM) {
        throw PreconditionViolated("synth_t needs m = 8");
    }
    u.validate();
    ExactMatrix M = u.matrix().reduced();
    std::vector<int> steps;
    long s = sde_abs2(M);
    while (s >= 4) {
        bool moved = false;
        for (int k = 0; k < 4; ++k) {
            const ExactMatrix N = syllable(k, M);
            const long sn = sde_abs2(N);
            if (sn == s - 1) {
                M = N;
                s = sn;
                steps.push_back(k);
                moved = true;
                break;
            }
        }
        if (!moved) {
            throw InternalError("no H T^k syllable lowers sde(|z|^2)");
        }
    }
    Tail best;
    std::vector<int> path;
    for (int depth = 0; depth <= 5 && best.cost == std::numeric_limits<long>::max(); ++depth) {
        search_tail(M, depth, path, 0, best);
    }
    if (best.cost == std::numeric_limits<long>::max()) {
        throw InternalError("T-basis tail search failed");
    }
    for (int k : best.ks) {
        M = syllable(k, M);
        steps.push_back(k);
    }
    Circuit c = monomial_circuit(Basis::T, M);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        // (H Lambda(w^k))^{-1} = Lambda(w^{-k}) H
        c.gates.emplace_back("H");
        for (auto &t : phase_tokens(Basis::T, -*it)) {
            c.gates.push_back(t);
        }
    }
    // t is 2L or 2L - 2 for determinant w^{even}; an odd determinant phase costs one more T
    const long L = u.matrix().reduced().L;
    const long t = c.cost() - (u.ell % 2 != 0 ? 1 : 0);
    if (!(t == 2 * L || t == 2 * L - 2 || (u.ell % 2 != 0 && t == 2 * L - 4))) {
        throw InternalError("T synthesis gave T-count " + std::to_string(c.cost()) + " at L = " + std::to_string(L));
    }
    return c;
}

} // namespace pqf
