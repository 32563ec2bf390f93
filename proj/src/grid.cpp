#include "pqf/grid.hpp"

#include "pqf/errors.hpp"

#include <algorithm>

namespace pqf {

RingOrder ring_for_sqrt(int d) {
    if (d == 2) {
        return RingOrder::M8;
    }
    if (d == 3) {
        return RingOrder::M12;
    }
    throw PreconditionViolated("grid problems are defined for d = 2, 3");
}

Real unit_value(int d) { return d == 2 ? Real(1L) + sqrt(Real(2L)) : Real(2L) + sqrt(Real(3L)); }

namespace {

RealCycInt unit_power(RingOrder m, long k) {
    const RealCycInt v = RealCycInt::fundamental_unit(m);
    const RealCycInt step = k >= 0 ? v : *RealCycInt(m, 1).div_exact(v);
    RealCycInt out(m, 1);
    for (long i = 0; i < std::labs(k); ++i) {
        out = out * step;
    }
    return out;
}

bool inside(const Interval &v, const Real &lo, const Real &hi) {
    return Interval::point(lo).certainly_le(v) && v.certainly_le(Interval::point(hi));
}

// Integers in [lo, hi], ordered by absolute value.
std::vector<mpz_class> integers_by_size(const Real &lo, const Real &hi, std::size_t cap) {
    std::vector<mpz_class> out;
    const mpz_class a = lo.ceil();
    const mpz_class b = hi.floor();
    if (a > b) {
        return out;
    }
    if (mpz_class(b - a) > mpz_class(static_cast<unsigned long>(cap))) {
        throw PreconditionViolated("grid problem is too badly scaled");
    }
    for (mpz_class t = a; t <= b; ++t) {
        out.push_back(t);
    }
    std::stable_sort(out.begin(), out.end(), [](const mpz_class &p, const mpz_class &q) {
        return mpz_cmpabs(p.get_mpz_t(), q.get_mpz_t()) < 0;
    });
    return out;
}

} // namespace

RealCycInt grid_point(const Real &x0, const Real &x1, const Real &y0, const Real &y1, int d) {
    const RingOrder m = ring_for_sqrt(d);
    const Real dx = x1 - x0;
    const Real dy = y1 - y0;
    const Real lam = unit_value(d);
    if (!(dx > Real(0L)) || !(dy > Real(0L)) || dx * dy < lam * lam) {
        throw PreconditionViolated("grid_point area below v^2");
    }
    // balance the widths with a unit power: alpha = beta * lam^{-k}
    const long k = (log(dy / dx) / (Real(2L) * log(lam))).round().get_si();
    const Real lk = pow(lam, Real(k));
    const Real lmk = pow(lam, Real(-k));
    const Real bx0 = x0 * lk;
    const Real bx1 = x1 * lk;
    Real by0 = y0 * lmk;
    Real by1 = y1 * lmk;
    if (d == 2 && (k % 2 != 0)) {
        // (1 - sqrt2)^k = (-1)^k lam^{-k}
        const Real t = -by1;
        by1 = -by0;
        by0 = t;
    }
    const RealCycInt back = unit_power(m, -k);
    const Real sd = sqrt(Real(static_cast<long>(d)));
    // beta - beta^bullet = 2 b sqrt d
    const auto bs = integers_by_size((bx0 - by1) / (Real(2L) * sd), (bx1 - by0) / (Real(2L) * sd), 1u << 20);
    for (const mpz_class &b : bs) {
        const Real off = Real(b) * sd;
        const Real lo = max(bx0 - off, by0 + off);
        const Real hi = min(bx1 - off, by1 + off);
        for (const mpz_class &a : integers_by_size(lo, hi, 1u << 20)) {
            const RealCycInt alpha = RealCycInt(m, a, b) * back;
            if (inside(alpha.eval(), x0, x1) && inside(alpha.bullet().eval(), y0, y1)) {
                return alpha;
            }
        }
    }
    throw InternalError("grid_point found no element despite sufficient area");
}

} // namespace pqf
