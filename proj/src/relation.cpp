#include "pqf/relation.hpp"

#include "pqf/errors.hpp"

#include <algorithm>
#include <numeric>

namespace pqf {

std::vector<Interval> relation_coeffs(const Real &theta, RingOrder m) {
    const int d = degree(m);
    const Interval half_theta = Interval::point(theta) / Interval(2L);
    std::vector<Interval> x;
    for (int j = 0; j < d; ++j) {
        x.push_back(sin(half_theta + Interval::pi() * Interval(2L * j) / Interval(static_cast<long>(as_int(m)))));
    }
    return x;
}

bool phase_error_below(const CycInt &z, const Real &theta, const Real &eps, Real *err) {
    const ComplexInterval zc = eval_complex(z);
    const ComplexInterval rot = ComplexInterval::expi(Interval::point(theta) / Interval(2L));
    const Interval im = (zc * rot).im;
    const Interval lhs = Interval(2L) * abs(im);
    const Interval mod = abs(zc);
    if (!mod.certainly_positive()) {
        return false;
    }
    if (err != nullptr) {
        *err = (lhs / mod).hi();
    }
    return lhs.certainly_less(Interval::point(eps) * mod);
}

namespace {

using Matrix = std::vector<std::vector<Real>>;
using IntMatrix = std::vector<std::vector<mpz_class>>;

} // namespace

PslqResult pslq_find(const std::vector<Real> &x_in, const RelationStop &stop, long max_iter) {
    const std::size_t n = x_in.size();
    if (n < 2) {
        throw PreconditionViolated("pslq needs at least two entries");
    }
    for (const auto &v : x_in) {
        if (v.is_zero()) {
            throw PreconditionViolated("pslq input has a zero entry");
        }
    }
    const long prec = working_precision();
    const Real gamma = sqrt(Real(4L) / Real(3L));
    const Real tiny = exp2(Real(-(prec - 24)));

    // Normalize and build H.
    std::vector<Real> s(n);
    Real acc(0L);
    for (std::size_t k = n; k-- > 0;) {
        acc += x_in[k] * x_in[k];
        s[k] = sqrt(acc);
    }
    std::vector<Real> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = x_in[k] / s[0];
    }
    for (std::size_t k = n; k-- > 0;) {
        s[k] = s[k] / s[0];
    }
    Matrix h(n, std::vector<Real>(n - 1, Real(0L)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < std::min(i + 1, n - 1); ++j) {
            if (i == j) {
                h[i][j] = s[j + 1] / s[j];
            } else {
                h[i][j] = -(y[i] * y[j]) / (s[j] * s[j + 1]);
            }
        }
    }
    IntMatrix a(n, std::vector<mpz_class>(n, 0));
    IntMatrix b(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 1;
        b[i][i] = 1;
    }

    auto reduce_entry = [&](std::size_t i, std::size_t j) {
        if (h[j][j].is_zero()) {
            return;
        }
        const mpz_class t = (h[i][j] / h[j][j]).round();
        if (t == 0) {
            return;
        }
        const Real rt(t);
        y[j] += rt * y[i];
        for (std::size_t k = 0; k <= j; ++k) {
            h[i][k] -= rt * h[j][k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            a[i][k] -= t * a[j][k];
            b[k][j] += t * b[k][i];
        }
    };

    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i; j-- > 0;) {
            reduce_entry(i, j);
        }
    }

    auto column = [&](std::size_t j) {
        std::vector<mpz_class> c(n);
        for (std::size_t k = 0; k < n; ++k) {
            c[k] = b[k][j];
        }
        return c;
    };

    for (long iter = 1; iter <= max_iter; ++iter) {
        // 1. exchange index
        std::size_t r = 0;
        Real best(-1L);
        Real g(1L);
        for (std::size_t i = 0; i < n - 1; ++i) {
            g *= gamma;
            const Real v = g * abs(h[i][i]);
            if (v > best) {
                best = v;
                r = i;
            }
        }
        // 2. swap
        std::swap(y[r], y[r + 1]);
        std::swap(a[r], a[r + 1]);
        std::swap(h[r], h[r + 1]);
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(b[k][r], b[k][r + 1]);
        }
        // 3. corner fix
        if (r + 2 < n) {
            const Real t0 = hypot(h[r][r], h[r][r + 1]);
            const Real t1 = h[r][r] / t0;
            const Real t2 = h[r][r + 1] / t0;
            for (std::size_t i = r; i < n; ++i) {
                const Real t3 = h[i][r];
                const Real t4 = h[i][r + 1];
                h[i][r] = t1 * t3 + t2 * t4;
                h[i][r + 1] = t1 * t4 - t2 * t3;
            }
        }
        // 4. reduction
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = std::min(i - 1, r + 1) + 1; j-- > 0;) {
                reduce_entry(i, j);
            }
        }
        // 5. candidates
        for (std::size_t j = 0; j < n; ++j) {
            auto c = column(j);
            if (stop(c)) {
                return {std::move(c), iter};
            }
        }
        // 6. precision guard: a numerically exact relation that stop rejects means the
        // precision cannot refine further.
        for (std::size_t j = 0; j < n; ++j) {
            if (abs(y[j]) < tiny) {
                throw PrecisionExhausted("pslq reached the working precision");
            }
        }
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (abs(h[j][j]) < tiny) {
                throw PrecisionExhausted("pslq reached the working precision");
            }
        }
    }
    throw IterationCap("pslq iteration cap reached");
}

namespace {

double log2_inv(const Real &eps) { return -log2(eps).to_double(); }

} // namespace

PhaseApprox approx_phase(const PhaseTarget &target, RingOrder m) {
    if (m == RingOrder::M4) {
        return cf_phase(target);
    }
    if (!(target.eps > Real(0L)) || !(target.eps < Real(1L))) {
        throw InvalidInput("eps must lie in (0, 1)");
    }
    const int d = degree(m);
    const double bits = log2_inv(target.eps);
    const long cap = static_cast<long>(64.0 * std::max(bits, 1.0));
    long prec = precision_for_eps(bits);

    auto finish = [&](CycInt z, long iters) {
        PhaseApprox out{std::move(z), Real(0L), Real(0L), iters};
        if (!phase_error_below(out.z, target.theta, target.eps, &out.achieved_error)) {
            throw InternalError("phase approximation failed its own check");
        }
        const ComplexInterval rot = ComplexInterval::expi(Interval::point(target.theta) / Interval(2L));
        out.residual = (eval_complex(out.z) * rot).im.mid();
        return out;
    };

    for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
        PrecisionScope scope(prec);
        // unit vectors first: z = zeta^j
        for (int j = 0; j < d; ++j) {
            const CycInt z = CycInt::zeta_pow(m, j);
            if (phase_error_below(z, target.theta, target.eps)) {
                return finish(z, 0);
            }
        }
        const auto xs = relation_coeffs(target.theta, m);
        std::vector<Real> x;
        for (const auto &iv : xs) {
            x.push_back(iv.mid());
        }
        // relabel: largest |x_j| first
        std::vector<std::size_t> perm(static_cast<std::size_t>(d));
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t p, std::size_t q) { return abs(x[p]) > abs(x[q]); });
        std::vector<Real> xp;
        for (auto p : perm) {
            xp.push_back(x[p]);
        }
        auto to_z = [&](const std::vector<mpz_class> &c) {
            std::vector<mpz_class> coeffs(static_cast<std::size_t>(d));
            for (std::size_t k = 0; k < perm.size(); ++k) {
                coeffs[perm[k]] = c[k];
            }
            return CycInt(m, std::move(coeffs));
        };
        const RelationStop stop = [&](const std::vector<mpz_class> &c) {
            return phase_error_below(to_z(c), target.theta, target.eps);
        };
        try {
            PslqResult res = pslq_find(xp, stop, cap);
            return finish(to_z(res.a), res.iterations);
        } catch (const PrecisionExhausted &) {
            continue;
        }
    }
    throw PrecisionExhausted("phase approximation did not converge after precision doubling");
}

PhaseApprox cf_phase(const PhaseTarget &target) {
    const RingOrder m = RingOrder::M4;
    if (!(target.eps > Real(0L)) || !(target.eps < Real(1L))) {
        throw InvalidInput("eps must lie in (0, 1)");
    }
    const double bits = log2_inv(target.eps);
    PrecisionScope scope(precision_for_eps(bits));
    const Real half = target.theta / Real(2L);
    if (!(abs(half) < Real::pi() / Real(2L))) {
        throw PreconditionViolated("cf_phase needs |theta| < pi");
    }
    const Real t = -(sin(half) / cos(half));
    // convergents p_k / q_k of t
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class p = t.floor(), q = 1;
    Real frac = t - Real(p);
    long iters = 0;
    auto accept = [&](const mpz_class &pa, const mpz_class &qa) -> std::optional<PhaseApprox> {
        CycInt z(m, std::vector<mpz_class>{qa, pa});
        Real err;
        if (qa != 0 && phase_error_below(z, target.theta, target.eps, &err)) {
            const ComplexInterval rot = ComplexInterval::expi(Interval::point(target.theta) / Interval(2L));
            return PhaseApprox{z, err, (eval_complex(z) * rot).im.mid(), iters};
        }
        return std::nullopt;
    };
    const Real tiny = exp2(Real(-(working_precision() - 24)));
    for (long guard = 0; guard < 64L * static_cast<long>(bits + 8); ++guard) {
        if (auto r = accept(p, q)) {
            return *r;
        }
        if (abs(frac) < tiny) {
            break;
        }
        const Real inv = Real(1L) / frac;
        const mpz_class ak = inv.floor();
        frac = inv - Real(ak);
        const mpz_class pn = ak * p + p_prev;
        const mpz_class qn = ak * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
        ++iters;
    }
    throw PrecisionExhausted("continued fraction exhausted the working precision");
}

CycInt rescale_floor(const CycInt &z, const Real &eps) {
    if (z.is_zero()) {
        throw PreconditionViolated("rescale_floor of zero");
    }
    const int d = degree(z.order());
    const Real target = pow(eps, Real(-1.0 / (2.0 * d)));
    const Real mod = abs(eval_complex(z)).mid();
    // values within rounding noise of an integer count as that integer
    const Real slack = Real(1L) - exp2(Real(-(working_precision() - 16)));
    const mpz_class s = (target / mod * slack).ceil();
    if (s <= 1) {
        return z;
    }
    return z * s;
}

} // namespace pqf
