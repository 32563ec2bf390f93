#include "pqf/modifier.hpp"

#include "pqf/errors.hpp"
#include "pqf/grid.hpp"

#include <algorithm>

namespace pqf {

namespace {

long base_of(RingOrder m) { return m == RingOrder::M4 ? 5 : 2; }

mpz_class ipow(long base, long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return out;
}

long bits_for(const CycInt &z) {
    std::size_t b = 1;
    for (const auto &c : z.coeffs()) {
        b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
    return std::max<long>(working_precision(), 8 * static_cast<long>(b) + 128);
}

} // namespace

RealCycInt nu_pow2(RingOrder m, long L) {
    if (L < 0) {
        throw PreconditionViolated("negative denominator exponent");
    }
    return {m, ipow(base_of(m), L)};
}

long ceil_log_nu2(const CycInt &z) {
    const RealCycInt n = norm_sq(z);
    if (n.is_zero()) {
        throw PreconditionViolated("ceil_log_nu2 of zero");
    }
    const RingOrder m = z.order();
    long L = std::max(0L, (log2(n.approx()) / log2(Real(base_of(m)))).ceil().get_si());
    while (n.cmp(nu_pow2(m, L)) > 0) {
        ++L;
    }
    while (L > 0 && n.cmp(nu_pow2(m, L - 1)) <= 0) {
        --L;
    }
    return L;
}

Real success_probability(const RealCycInt &r, const CycInt &z, long L_r) {
    const Interval rv = r.eval();
    const Interval p = rv * rv * norm_sq(z).eval() / nu_pow2(z.order(), L_r).eval();
    return p.lo();
}

void enumerate_candidates_v(const CycInt &z, const std::function<bool(const mpz_class &, long)> &visit) {
    if (z.order() != RingOrder::M4 || z.is_zero()) {
        throw PreconditionViolated("enumerate_candidates_v needs a nonzero Gaussian integer");
    }
    PrecisionScope scope(bits_for(z));
    const mpz_class n = norm_sq(z).a();
    const long L1 = ceil_log_nu2(z);
    const Real log5 = log(Real(5L));
    const Real lambda = Real(L1) - log(Real(n)) / log5;
    const Real inv_l1 = Real(1L) / Real(std::max(L1, 1L));
    const long k0 = std::max(0L, (Real(2L) * log(Real(std::max(L1, 1L))) / log5).ceil().get_si());
    const Real sqrt5 = sqrt(Real(5L));
    for (long k = k0;; ++k) {
        const mpz_class lo = pow(sqrt5, Real(k) + lambda - inv_l1).floor();
        const mpz_class hi = pow(sqrt5, Real(k) + lambda).ceil();
        const long lr = k + L1;
        const mpz_class top = ipow(5, lr);
        const mpz_class low_pow = ipow(5, lr * std::max(L1, 1L) - 1);
        for (mpz_class r = std::max(lo, mpz_class(1)); r <= hi; ++r) {
            const mpz_class s = r * r * n;
            if (s > top) {
                continue;
            }
            mpz_class sp;
            mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(std::max(L1, 1L)));
            if (sp <= low_pow) {
                continue;
            }
            if (!visit(r, k)) {
                return;
            }
        }
    }
}

namespace {

ModifierResult find_modifier_v(const CycInt &z, const ModifierConfig &cfg) {
    const mpz_class n = norm_sq(z).a();
    ModifierResult out;
    out.L1 = ceil_log_nu2(z);
    {
        PrecisionScope scope(bits_for(z));
        out.slack = Real(out.L1) - log(Real(n)) / log(Real(5L));
    }
    const long budget = cfg.budget_per_l1 * std::max(out.L1, 1L);
    bool found = false;
    enumerate_candidates_v(z, [&](const mpz_class &r, long k) {
        if (++out.candidates_tried > budget) {
            return false;
        }
        const long lr = k + out.L1;
        const mpz_class xi = ipow(5, lr) - r * r * n;
        NormEqOutcome o = solve_two_squares(xi, cfg.factor);
        if (o.status != NormEqStatus::Solved) {
            return true;
        }
        out.r = RealCycInt(RingOrder::M4, r);
        out.y = *o.y;
        out.L_r = lr;
        found = true;
        return false;
    });
    if (!found) {
        throw AssumptionFailure("no easily solvable two-squares equation within " + std::to_string(budget) +
                                " candidates");
    }
    out.p_r = success_probability(out.r, z, out.L_r);
    return out;
}

ModifierResult find_modifier_rho(const CycInt &z, const ModifierConfig &cfg) {
    const RingOrder m = z.order();
    const int d = m == RingOrder::M8 ? 2 : 3;
    const RealCycInt n = norm_sq(z);
    ModifierResult out;
    out.L1 = ceil_log_nu2(z);
    const long L1 = std::max(out.L1, 1L);
    PrecisionScope scope(bits_for(z));
    const Real nz = n.approx();
    const Real nzb = n.bullet().approx();
    if (!(nzb > Real(0L))) {
        throw PreconditionViolated("z^bullet vanishes");
    }
    const Real zeta = Real(out.L1) - log2(nz);
    out.slack = zeta;
    const Real absz = sqrt(nz);
    const Real abszb = sqrt(nzb);
    const Real v2 = unit_value(d) * unit_value(d);
    auto area = [&](long R) { return exp2(Real(R + L1)) / (Real(L1) * absz * abszb); };
    long R0 = (log2(v2 * Real(L1) * absz * abszb) - Real(L1)).ceil().get_si();
    while (area(R0) < v2) {
        ++R0;
    }
    const long budget = cfg.budget_per_l1 * L1;
    const Real shrink = Real(1L) - Real(1L) / Real(2 * L1);
    for (long level = 0;; ++level) {
        const long R = R0 + 2 * level;
        if (R + out.L1 < 0) {
            continue;
        }
        const Real x_max = exp2((Real(R) + zeta) / Real(2L));
        const Real x_min = x_max * shrink;
        const Real ybound = exp2(Real(R + out.L1) / Real(2L)) / abszb;
        const long windows = 1L << std::min(level, 40L);
        const Real width = (x_max - x_min) / Real(windows);
        const long lr = R + out.L1;
        const RealCycInt top = nu_pow2(m, lr);
        for (long w = windows; w-- > 0;) {
            if (++out.candidates_tried > budget) {
                throw AssumptionFailure("no easily solvable norm equation within " + std::to_string(budget) +
                                        " candidates");
            }
            const Real x0 = x_min + width * Real(w);
            const Real x1 = w + 1 == windows ? x_max : x0 + width;
            RealCycInt r;
            try {
                r = grid_point(x0, x1, -ybound, ybound, d);
            } catch (const PreconditionViolated &) {
                continue;
            }
            const RealCycInt rz2 = r * r * n;
            const RealCycInt xi = top - rz2;
            if (xi.sign() < 0 || xi.bullet().sign() < 0) {
                continue;
            }
            // p_r > 1 - 1/L1  <=>  L1 |rz|^2 - (L1 - 1) 2^{L_r} > 0
            if ((rz2 * RealCycInt(m, L1) - top * RealCycInt(m, L1 - 1)).sign() <= 0) {
                continue;
            }
            NormEqOutcome o = solve_norm_eq(xi, cfg.factor);
            if (o.status != NormEqStatus::Solved) {
                continue;
            }
            out.r = r;
            out.y = *o.y;
            out.L_r = lr;
            out.p_r = success_probability(r, z, lr);
            return out;
        }
    }
}

} // namespace

ModifierResult find_modifier(const CycInt &z, const ModifierConfig &cfg) {
    if (z.is_zero()) {
        throw PreconditionViolated("find_modifier of zero");
    }
    ModifierResult out = z.order() == RingOrder::M4 ? find_modifier_v(z, cfg) : find_modifier_rho(z, cfg);
    const RealCycInt rz = out.r * out.r * norm_sq(z);
    if (!(norm_sq(out.y) + rz == nu_pow2(z.order(), out.L_r))) {
        throw InternalError("modifier result is not unitary");
    }
    return out;
}

} // namespace pqf
