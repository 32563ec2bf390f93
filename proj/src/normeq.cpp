#include "pqf/normeq.hpp"

#include "pqf/errors.hpp"
#include "pqf/factor.hpp"

namespace pqf {

namespace {

CycInt power(const CycInt &z, int e) {
    CycInt r = CycInt::from_int(z.order(), 1);
    for (int i = 0; i < e; ++i) {
        r *= z;
    }
    return r;
}

mpz_class sqrt_mod_or_throw(long a, const mpz_class &p) {
    mpz_class h;
    if (!sqrt_mod(mpz_class(a), p, h)) {
        throw InternalError("expected quadratic residue is not one");
    }
    return h;
}

// Distinct primes of Z[rho] above the rational prime p.
std::vector<RealCycInt> primes_above(const mpz_class &p, RingOrder m) {
    if (m == RingOrder::M4) {
        return {RealCycInt(m, p)};
    }
    const long r = mpz_fdiv_ui(p.get_mpz_t(), as_int(m));
    if (m == RingOrder::M8) {
        if (p == 2) {
            return {RealCycInt(m, 0, 1)};
        }
        if (r == 1 || r == 7) {
            const mpz_class h = sqrt_mod_or_throw(2, p);
            RealCycInt pi = real_gcd(RealCycInt(m, p), RealCycInt(m, h, -1));
            return {pi, pi.bullet()};
        }
        return {RealCycInt(m, p)};
    }
    if (p == 2) {
        return {RealCycInt(m, 1, 1)};
    }
    if (p == 3) {
        return {RealCycInt(m, 0, 1)};
    }
    if (r == 1 || r == 11) {
        const mpz_class h = sqrt_mod_or_throw(3, p);
        RealCycInt pi = real_gcd(RealCycInt(m, p), RealCycInt(m, h, -1));
        return {pi, pi.bullet()};
    }
    return {RealCycInt(m, p)};
}

bool is_unit(const RealCycInt &u) {
    const mpz_class n = abs_norm(u);
    return n == 1 || n == -1;
}

bool associates(const RealCycInt &a, const RealCycInt &b) {
    auto q = a.div_exact(b);
    return q && is_unit(*q);
}

// y in Z[zeta] with |y|^2 an associate of the Good prime pi.
CycInt prime_norm_solution(const RealCycInt &pi) {
    const RingOrder m = pi.order();
    const mpz_class q = abs(abs_norm(pi));
    if (m == RingOrder::M8 && q == 2) {
        return CycInt(m, {1, 1});
    }
    const bool rational = pi.b() == 0;
    const mpz_class p = rational ? abs(pi.a()) : q;
    const long r = mpz_fdiv_ui(p.get_mpz_t(), as_int(m));
    CycInt s = CycInt::imag_unit(m);
    long square = -1;
    if (rational) {
        if (m == RingOrder::M8 && r == 3) {
            s = CycInt(m, {0, 1, 0, 1}); // i sqrt2
            square = -2;
        } else if (m == RingOrder::M12 && r == 7) {
            s = CycInt(m, {-1, 0, 2, 0}); // i sqrt3
            square = -3;
        }
    }
    const mpz_class h = sqrt_mod_or_throw(square, p);
    CycInt y = euclid_gcd(pi.embed(), s - CycInt::from_int(m, h));
    if (!associates(norm_sq(y), pi)) {
        throw InternalError("prime splitting failed for " + pi.str());
    }
    return y;
}

} // namespace

bool LimitedFactorization::complete() const { return cofactor == RealCycInt(cofactor.order(), 1); }

LimitedFactorization limited_factor(const RealCycInt &xi, const FactorConfig &cfg) {
    if (xi.is_zero()) {
        throw PreconditionViolated("limited_factor of zero");
    }
    const RingOrder m = xi.order();
    LimitedFactorization out;
    const IntFactorization f = factor_integer(abs(abs_norm(xi)), cfg.rho_budget);
    RealCycInt eta = xi;
    for (const auto &[p, e] : f.factors) {
        for (const RealCycInt &pi : primes_above(p, m)) {
            int k = 0;
            while (auto q = eta.div_exact(pi)) {
                eta = *q;
                ++k;
            }
            if (k > 0) {
                out.factors.push_back({pi, k});
            }
        }
    }
    out.budget_spent = f.work_spent;
    if (is_unit(eta)) {
        out.unit = eta;
        out.cofactor = RealCycInt(m, 1);
    } else {
        out.unit = RealCycInt(m, 1);
        out.cofactor = eta;
    }
    return out;
}

PrimeClass classify_prime(const RealCycInt &pi) {
    const RingOrder m = pi.order();
    const long mm = as_int(m);
    if (m == RingOrder::M4) {
        const mpz_class p = abs(pi.a());
        return (p == 2 || mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) ? PrimeClass::Good : PrimeClass::Bad;
    }
    if (pi.b() == 0) {
        const mpz_class p = abs(pi.a());
        return mpz_fdiv_ui(p.get_mpz_t(), mm) == static_cast<unsigned long>(mm - 1) ? PrimeClass::Bad
                                                                                    : PrimeClass::Good;
    }
    const mpz_class q = abs(abs_norm(pi));
    if (m == RingOrder::M8 && q == 2) {
        return PrimeClass::Good;
    }
    return mpz_fdiv_ui(q.get_mpz_t(), mm) == 1 ? PrimeClass::Good : PrimeClass::Bad;
}

NormEqOutcome solve_norm_eq(const RealCycInt &xi, const FactorConfig &cfg) {
    const RingOrder m = xi.order();
    if (m == RingOrder::M4) {
        throw PreconditionViolated("solve_norm_eq is for m = 8, 12; use solve_two_squares");
    }
    NormEqOutcome out;
    if (xi.is_zero()) {
        out.status = NormEqStatus::Solved;
        out.y = CycInt(m);
        return out;
    }
    if (xi.sign() < 0 || xi.bullet().sign() < 0) {
        out.status = NormEqStatus::ProvablyUnsolvable;
        return out;
    }
    out.certificate = limited_factor(xi, cfg);
    CycInt y = CycInt::from_int(m, 1);
    for (const auto &[pi, e] : out.certificate.factors) {
        y *= power(pi.embed(), e / 2);
        if (e % 2 == 1) {
            if (classify_prime(pi) == PrimeClass::Bad) {
                out.status = NormEqStatus::ProvablyUnsolvable;
                return out;
            }
            y *= prime_norm_solution(pi);
        }
    }
    if (!out.certificate.complete()) {
        out.status = NormEqStatus::NotEasy;
        return out;
    }
    try {
        y = unit_adjust(y, xi);
    } catch (const NotAdjustable &) {
        out.status = NormEqStatus::ProvablyUnsolvable;
        return out;
    }
    if (!(norm_sq(y) == xi)) {
        throw InternalError("norm equation solution failed verification");
    }
    out.status = NormEqStatus::Solved;
    out.y = y;
    return out;
}

NormEqOutcome solve_two_squares(const mpz_class &n, const FactorConfig &cfg) {
    const RingOrder m = RingOrder::M4;
    NormEqOutcome out;
    if (n < 0) {
        out.status = NormEqStatus::ProvablyUnsolvable;
        return out;
    }
    if (n == 0) {
        out.status = NormEqStatus::Solved;
        out.y = CycInt(m);
        return out;
    }
    out.certificate = limited_factor(RealCycInt(m, n), cfg);
    CycInt y = CycInt::from_int(m, 1);
    for (const auto &[pi, e] : out.certificate.factors) {
        const mpz_class p = pi.a();
        y *= power(pi.embed(), e / 2);
        if (e % 2 == 0) {
            continue;
        }
        if (p == 2) {
            y *= CycInt(m, {1, 1});
        } else if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) {
            const mpz_class h = sqrt_mod_or_throw(-1, p);
            y *= euclid_gcd(pi.embed(), CycInt(m, {0, 1}) - CycInt::from_int(m, h));
        } else {
            out.status = NormEqStatus::ProvablyUnsolvable;
            return out;
        }
    }
    if (!out.certificate.complete()) {
        out.status = NormEqStatus::NotEasy;
        return out;
    }
    if (!(norm_sq(y) == RealCycInt(m, n))) {
        throw InternalError("two-squares solution failed verification");
    }
    out.status = NormEqStatus::Solved;
    out.y = y;
    return out;
}

} // namespace pqf
