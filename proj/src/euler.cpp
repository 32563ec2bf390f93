#include "pqf/errors.hpp"
#include "pqf/protocol.hpp"

namespace pqf {

namespace {

Real arg_of(const ComplexInterval &z) {
    Real out;
    const Real re = z.re.mid();
    const Real im = z.im.mid();
    mpfr_atan2(out.get(), im.get(), re.get(), MPFR_RNDN);
    return out;
}

Real modulus(const ComplexInterval &z) { return abs(z).mid(); }

Real wrap_pi(const Real &t) {
    const Real two_pi = Real(2L) * Real::pi();
    Real r = t - Real((t / two_pi).round()) * two_pi;
    if (r <= -Real::pi()) {
        r += two_pi;
    }
    return r;
}

ComplexInterval expi(const Real &t) { return ComplexInterval::expi(Interval::point(t)); }

} // namespace

CMat2 rz(const Real &t) {
    const Real h = t / Real(2L);
    const ComplexInterval zero{Interval(0L), Interval(0L)};
    return {expi(-h), zero, zero, expi(h)};
}

CMat2 euler_matrix(const Real &alpha, const Real &beta, const Real &gamma, const Real &delta) {
    const CMat2 H = hadamard();
    CMat2 M = rz(alpha) * H * rz(beta) * H * rz(gamma);
    const ComplexInterval ph = expi(delta);
    return {ph * M.a, ph * M.b, ph * M.c, ph * M.d};
}

Real max_entry_error(const CMat2 &A, const CMat2 &B) {
    Real worst(0L);
    for (const auto &d : {A.a - B.a, A.b - B.b, A.c - B.c, A.d - B.d}) {
        worst = max(worst, abs(d).hi());
    }
    return worst;
}

EulerResult euler_angles(const CMat2 &u) {
    EulerResult res;
    const Real tiny = pow(Real(2L), Real(-working_precision() / 2));
    const Real m00 = modulus(u.a);
    const Real m10 = modulus(u.c);
    // H Rz(beta) H = Rx(beta), so u = e^{i delta} Rz(alpha) Rx(beta) Rz(gamma)
    Real b;
    mpfr_atan2(b.get(), m10.get(), m00.get(), MPFR_RNDN);
    res.beta = Real(2L) * b;
    if (m10 < tiny) {
        res.degenerate = true;
        res.alpha = wrap_pi(arg_of(u.d) - arg_of(u.a));
        res.beta = Real(0L);
        res.gamma = Real(0L);
    } else if (m00 < tiny) {
        const Real diff = arg_of(u.c) - arg_of(u.b);
        res.alpha = wrap_pi(diff / Real(2L));
        res.gamma = wrap_pi(-diff / Real(2L));
    } else {
        const Real sum = arg_of(u.d) - arg_of(u.a);
        const Real diff = arg_of(u.c) - arg_of(u.b);
        res.alpha = wrap_pi((sum + diff) / Real(2L));
        res.gamma = wrap_pi((sum - diff) / Real(2L));
        // u10 / u00 = -i tan(beta/2) e^{i alpha}; a half-turn ambiguity remains in alpha
        const CMat2 R = euler_matrix(res.alpha, res.beta, res.gamma, Real(0L));
        const ComplexInterval want = u.c * u.a.conj();
        const ComplexInterval got = R.c * R.a.conj();
        const Interval align = want.re * got.re + want.im * got.im;
        if (align.mid().sign() < 0) {
            res.alpha = wrap_pi(res.alpha + Real::pi());
            res.gamma = wrap_pi(res.gamma - Real::pi());
        }
    }
    const CMat2 R = euler_matrix(res.alpha, res.beta, res.gamma, Real(0L));
    // global phase from the larger entry
    if (m00 >= m10) {
        res.delta = wrap_pi(arg_of(u.a) - arg_of(R.a));
    } else {
        res.delta = wrap_pi(arg_of(u.c) - arg_of(R.c));
    }
    return res;
}

EulerResult euler_decompose(const CMat2 &u, const Real &eps, long k_rounds, Basis basis, const ProtocolConfig &cfg) {
    EulerResult res = euler_angles(u);
    const Real err = max_entry_error(euler_matrix(res.alpha, res.beta, res.gamma, res.delta), u);
    if (!(err < pow(Real(2L), Real(-60L)))) {
        throw PreconditionViolated("input is not unitary to working precision");
    }
    const Real third = eps / Real(3L);
    // Lambda(e^{i t}) equals Rz(t) up to global phase
    res.protocols.push_back(build_pqf(res.alpha, third, k_rounds, basis, cfg));
    if (!res.degenerate) {
        res.protocols.push_back(build_pqf(res.beta, third, k_rounds, basis, cfg));
        res.protocols.push_back(build_pqf(res.gamma, third, k_rounds, basis, cfg));
    }
    return res;
}

} // namespace pqf
