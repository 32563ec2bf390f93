#include "pqf/distance.hpp"

namespace pqf {

CMat2 CMat2::operator*(const CMat2 &o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

CMat2 CMat2::dagger() const { return {a.conj(), c.conj(), b.conj(), d.conj()}; }

CMat2 enclose(const ExactMatrix &M) {
    const mpz_class nu2 = M.m == RingOrder::M4 ? 5 : 2;
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), nu2.get_mpz_t(), static_cast<unsigned long>(M.L));
    const ComplexInterval inv{Interval(1L) / Interval::sqrt_of(scale), Interval(0L)};
    return {eval_complex(M.a) * inv, eval_complex(M.b) * inv, eval_complex(M.c) * inv,
            eval_complex(M.d) * inv};
}

CMat2 lambda_phase(const Real &theta) {
    const ComplexInterval one{Interval(1L), Interval(0L)};
    const ComplexInterval zero{Interval(0L), Interval(0L)};
    return {one, zero, zero, ComplexInterval::expi(Interval::point(theta))};
}

CMat2 hadamard() {
    const Interval s = Interval(1L) / Interval::sqrt_of(2);
    return {{s, 0L}, {s, 0L}, {s, 0L}, {-s, 0L}};
}

Real trace_distance(const CMat2 &A, const CMat2 &B) {
    const CMat2 P = A.dagger() * B;
    const ComplexInterval tr = P.a + P.d;
    const Interval gap = Interval(1L) - abs(tr) / Interval(2L);
    // the lower end may dip below zero through rounding
    const Real hi = gap.hi();
    if (hi.sign() <= 0) {
        return Real(0L);
    }
    return sqrt(Interval(Real(0L), hi)).hi();
}

Real phase_distance(const ExactMatrix &M, const Real &theta) { return trace_distance(enclose(M), lambda_phase(theta)); }

} // namespace pqf
