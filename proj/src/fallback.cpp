#include "pqf/fallback.hpp"

#include "pqf/distance.hpp"
#include "pqf/errors.hpp"
#include "pqf/grid.hpp"
#include "pqf/modifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

namespace pqf {

namespace {

Real log2r(const Real &x) { return log(x) / log(Real(2L)); }

mpz_class nu2_pow(RingOrder m, long k) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), m == RingOrder::M4 ? 5 : 2, static_cast<unsigned long>(k));
    return out;
}

// Interval value of nu^k.
Interval nu_pow(RingOrder m, long k) { return Interval::sqrt_of(nu2_pow(m, k)); }

// Area of the unit-disk cap {Re w >= 1 - eps^2}.
Real cap_area(const Real &eps) {
    const Real c = Real(1L) - eps * eps;
    const Real half_chord = sqrt(Real(1L) - c * c);
    // arccos(c) = atan2(half_chord, c)
    Real ang;
    mpfr_atan2(ang.get(), half_chord.get(), c.get(), MPFR_RNDN);
    return ang - c * half_chord;
}

CycInt assemble(RingOrder m, const RealCycInt &alpha, const RealCycInt &beta) {
    return alpha.embed() + beta.embed() * CycInt::imag_unit(m);
}

struct Vec2 {
    Real x, y;
};

Real dot(const Vec2 &p, const Vec2 &q) { return p.x * q.x + p.y * q.y; }

} // namespace

long min_round_exponent(const Real &eps, RingOrder m) {
    const Real inv = Real(1L) / eps;
    if (m == RingOrder::M4) {
        // enough room for a few dozen lattice points in the scaled cap
        const Real want = Real(64L) / cap_area(eps);
        return std::max(1L, static_cast<long>((log(want) / log(Real(5L))).ceil().get_si()));
    }
    const int d = m == RingOrder::M8 ? 2 : 3;
    // C = 1/2 + log_sqrt2(unit)
    const Real c = Real(0.5) + Real(2L) * log2r(unit_value(d));
    return static_cast<long>((c + Real(2L) * log2r(inv)).ceil().get_si());
}

bool is_feasible(const CycInt &u, long k, const Real &theta, const Real &eps) {
    const RingOrder m = u.order();
    const RealCycInt bound = nu_pow2(m, k);
    if (norm_sq(u).cmp(bound) > 0) {
        return false;
    }
    if (m != RingOrder::M4 && norm_sq(bullet(u)).cmp(bound) > 0) {
        return false;
    }
    const Interval half = Interval::point(theta) / Interval(2L);
    const ComplexInterval rot = eval_complex(u) * ComplexInterval::expi(half);
    const Interval e = Interval::point(eps);
    const Interval rhs = (Interval(1L) - e * e) * nu_pow(m, k);
    return rhs.certainly_le(rot.re);
}

struct CandidateSet::Impl {
    RingOrder m;
    long k;
    Real theta, eps;
    Real sin_h, cos_h;
    Real y_min, y_max;
    mpz_class n;
    std::vector<CycInt> points; // m = 4

    Real R() const { return nu_pow(m, k).mid(); }

    // Length of the horizontal chord of the meniscus at height y (negative if empty).
    Real width(const Real &y) const {
        const Real one(1L);
        const Real x_hi = sqrt(max(Real(0L), one - y * y));
        const Real x_lo = (one - eps * eps + y * sin_h) / cos_h;
        return x_hi - x_lo;
    }

    Real x_lo(const Real &y) const { return (Real(1L) - eps * eps + y * sin_h) / cos_h; }
    Real x_hi(const Real &y) const { return sqrt(max(Real(0L), Real(1L) - y * y)); }

    void build_strips() {
        const Real target = eps * eps / Real(2L) * (Real(1L) + Real(1e-9));
        const Real center = -sin_h;
        const Real reach = Real(4L) * eps;
        auto edge = [&](const Real &outside) {
            // bisection between the maximum of the (concave) width and a point outside
            Real in = center, out = outside;
            for (long it = 0; it < working_precision() + 8; ++it) {
                const Real mid = (in + out) / Real(2L);
                if (width(mid) >= target) {
                    in = mid;
                } else {
                    out = mid;
                }
            }
            return in;
        };
        y_min = edge(center - reach);
        y_max = edge(center + reach);
        n = (Real(2L) * sqrt(Real(2L)) / eps).floor();
    }

    std::optional<FeasibleCandidate> strip(const mpz_class &j) const {
        const int d = m == RingOrder::M8 ? 2 : 3;
        const Real r = R();
        const Real yj = y_min + Real(j) * (y_max - y_min) / Real(n);
        const Real bl = nu_pow(m, k - 1).mid();
        try {
            const RealCycInt beta = grid_point(r * yj, r * (yj + eps * eps / Real(2L)), -bl, bl, d);
            const Real yb = beta.approx() / r;
            const RealCycInt alpha = grid_point(r * x_lo(yb), r * x_hi(yb), -bl, bl, d);
            CycInt u = assemble(m, alpha, beta);
            if (!is_feasible(u, k, theta, eps)) {
                return std::nullopt;
            }
            return FeasibleCandidate{std::move(u), k, j};
        } catch (const PqfError &) {
            return std::nullopt;
        }
    }

    void enumerate_lattice() {
        const Real one(1L);
        const Real r = R();
        const Real e2 = eps * eps;
        const Real chord = sqrt(one - (one - e2) * (one - e2));
        // (X, Y) = ((Re(u e^{ih}) - R(1 - eps^2)) / (R eps^2), Im(u e^{ih}) / (R chord))
        const Real sx = r * e2;
        const Real sy = r * chord;
        Vec2 v1{cos_h / sx, sin_h / sy};
        Vec2 v2{-sin_h / sx, cos_h / sy};
        const Vec2 off{-(one - e2) / e2, Real(0L)};
        mpz_class u11 = 1, u21 = 0, u12 = 0, u22 = 1; // columns: integer (a, b) of v1, v2
        for (int guard = 0; guard < 10000; ++guard) {
            if (dot(v2, v2) < dot(v1, v1)) {
                std::swap(v1, v2);
                std::swap(u11, u12);
                std::swap(u21, u22);
            }
            const mpz_class mu = (dot(v1, v2) / dot(v1, v1)).round();
            if (mu == 0) {
                break;
            }
            const Real mr(mu);
            v2 = {v2.x - mr * v1.x, v2.y - mr * v1.y};
            u12 -= mu * u11;
            u22 -= mu * u21;
        }
        // cover the box [0, 1] x [-1, 1] by the disk around (1/2, 0)
        const Vec2 t{Real(0.5) - off.x, Real(0L) - off.y};
        const Real radius = sqrt(Real(1.25));
        const Real det = v1.x * v2.y - v1.y * v2.x;
        const Real tau1 = (t.x * v2.y - t.y * v2.x) / det;
        const Real tau2 = (v1.x * t.y - v1.y * t.x) / det;
        const Real mu = dot(v1, v2) / dot(v1, v1);
        const Vec2 v2s{v2.x - mu * v1.x, v2.y - mu * v1.y};
        const Real n1 = sqrt(dot(v1, v1));
        const Real n2s = sqrt(dot(v2s, v2s));
        const mpz_class c2_lo = (tau2 - radius / n2s).ceil();
        const mpz_class c2_hi = (tau2 + radius / n2s).floor();
        const mpz_class bound = nu2_pow(m, k);
        for (mpz_class c2 = c2_lo; c2 <= c2_hi; ++c2) {
            const Real d2 = Real(c2) - tau2;
            const Real rem = radius * radius - d2 * d2 * dot(v2s, v2s);
            if (rem.sign() < 0) {
                continue;
            }
            const Real half = sqrt(rem) / n1;
            const Real mid = tau1 - mu * d2;
            const mpz_class c1_lo = (mid - half).ceil();
            const mpz_class c1_hi = (mid + half).floor();
            for (mpz_class c1 = c1_lo; c1 <= c1_hi; ++c1) {
                const mpz_class a = c1 * u11 + c2 * u12;
                const mpz_class b = c1 * u21 + c2 * u22;
                if (a * a + b * b > bound) {
                    continue;
                }
                CycInt u(RingOrder::M4, std::vector<mpz_class>{a, b});
                if (is_feasible(u, k, theta, eps)) {
                    points.push_back(std::move(u));
                    if (points.size() > (1U << 22)) {
                        throw InternalError("lattice enumeration produced too many points");
                    }
                }
            }
        }
        n = static_cast<unsigned long>(points.size());
    }
};

CandidateSet::CandidateSet(const Real &theta, const Real &eps, long k, RingOrder m) : impl_(std::make_unique<Impl>()) {
    if (k < min_round_exponent(eps, m)) {
        throw PreconditionViolated("round exponent below the admissible minimum");
    }
    if (abs(theta) > Real::pi() / Real(2L)) {
        throw PreconditionViolated("candidate sets need |theta| <= pi/2");
    }
    Impl &s = *impl_;
    s.m = m;
    s.k = k;
    s.theta = theta;
    s.eps = eps;
    s.sin_h = sin(theta / Real(2L));
    s.cos_h = cos(theta / Real(2L));
    if (m == RingOrder::M4) {
        s.enumerate_lattice();
    } else {
        s.build_strips();
    }
}

CandidateSet::~CandidateSet() = default;
CandidateSet::CandidateSet(CandidateSet &&) noexcept = default;
CandidateSet &CandidateSet::operator=(CandidateSet &&) noexcept = default;

RingOrder CandidateSet::order() const { return impl_->m; }
long CandidateSet::k() const { return impl_->k; }
mpz_class CandidateSet::size() const { return impl_->n; }

std::optional<FeasibleCandidate> CandidateSet::at(const mpz_class &j) const {
    if (j < 0 || j >= impl_->n) {
        throw PreconditionViolated("candidate index out of range");
    }
    if (impl_->m == RingOrder::M4) {
        return FeasibleCandidate{impl_->points[j.get_ui()], impl_->k, j};
    }
    return impl_->strip(j);
}

std::pair<Real, Real> CandidateSet::segment() const { return {impl_->y_min, impl_->y_max}; }

struct CandidateSampler::Impl {
    mpz_class n;
    std::vector<unsigned long> order; // small sets: shuffled up front
    std::size_t pos = 0;
    gmp_randclass rng{gmp_randinit_mt};
    std::set<mpz_class> used;
};

CandidateSampler::CandidateSampler(const CandidateSet &set, std::uint64_t seed) : impl_(std::make_unique<Impl>()) {
    impl_->n = set.size();
    if (impl_->n <= (1UL << 20)) {
        impl_->order.resize(impl_->n.get_ui());
        for (std::size_t i = 0; i < impl_->order.size(); ++i) {
            impl_->order[i] = i;
        }
        std::mt19937_64 g(seed);
        std::shuffle(impl_->order.begin(), impl_->order.end(), g);
    } else {
        impl_->rng.seed(static_cast<unsigned long>(seed));
    }
}

CandidateSampler::~CandidateSampler() = default;

std::optional<mpz_class> CandidateSampler::next() {
    Impl &s = *impl_;
    if (s.n <= (1UL << 20)) {
        if (s.pos >= s.order.size()) {
            return std::nullopt;
        }
        return mpz_class(s.order[s.pos++]);
    }
    for (;;) {
        mpz_class j = s.rng.get_z_range(s.n);
        if (s.used.insert(j).second) {
            return j;
        }
    }
}

std::pair<Real, long> split_root_of_unity(const Real &theta, RingOrder m) {
    const Real step = Real(2L) * Real::pi() / Real(static_cast<long>(as_int(m)));
    const mpz_class j = (theta / step).round();
    const long jm = mpz_fdiv_ui(j.get_mpz_t(), static_cast<unsigned long>(as_int(m)));
    return {theta - Real(j) * step, jm};
}

Real fallback_cost_bound(const Real &eps, RingOrder m) {
    const Real inv = Real(1L) / eps;
    switch (m) {
    case RingOrder::M12:
        return Real(2L) * log2r(inv) + Real(7L);
    case RingOrder::M8:
        return Real(4L) * log2r(inv) + Real(16L);
    case RingOrder::M4:
        return Real(3L) * log(inv) / log(Real(5L)) + Real(16L);
    }
    return Real(0L);
}

FallbackResult fallback_approx(const Real &theta, const Real &eps, RingOrder m, const FallbackConfig &cfg) {
    if (!(eps.sign() > 0 && eps < Real(1L))) {
        throw InvalidInput("eps must lie in (0, 1)");
    }
    const double bits = std::max(1.0, -std::log2(eps.to_double()));
    PrecisionScope scope(std::max(working_precision(), precision_for_eps(bits)));
    const Basis basis = m == RingOrder::M8 ? Basis::T : (m == RingOrder::M12 ? Basis::PI12 : Basis::V);

    const auto [theta_r, j] = split_root_of_unity(theta, m);
    const ExactMatrix prefix = eval_circuit(Circuit{basis, phase_tokens(basis, j)});

    FallbackResult res;
    res.prefix_power = j;
    {
        // the exact root of unity alone may already be close enough
        const Real d = phase_distance(prefix, theta);
        if (d <= eps) {
            res.circuit = synth_exact(ExactUnitary::from_matrix(prefix));
            res.unitary = ExactUnitary::from_matrix(ExactMatrix::identity(m));
            res.distance = d;
            return res;
        }
    }

    const long k0 = min_round_exponent(eps, m);
    const long budget = cfg.budget_per_k * k0;
    for (long k = k0; k <= k0 + 4 && res.candidates_tried < budget; ++k) {
        CandidateSet set(theta_r, eps, k, m);
        CandidateSampler sampler(set, cfg.seed + static_cast<std::uint64_t>(k - k0));
        while (res.candidates_tried < budget) {
            const auto idx = sampler.next();
            if (!idx) {
                break;
            }
            ++res.candidates_tried;
            const auto cand = set.at(*idx);
            if (!cand) {
                continue;
            }
            const RealCycInt xi = nu_pow2(m, k) - norm_sq(cand->u);
            NormEqOutcome sol;
            if (xi.is_zero()) {
                sol.status = NormEqStatus::Solved;
                sol.y = CycInt(m);
            } else if (m == RingOrder::M4) {
                sol = solve_two_squares(xi.a(), cfg.factor);
            } else {
                sol = solve_norm_eq(xi, cfg.factor);
            }
            if (sol.status != NormEqStatus::Solved) {
                continue;
            }
            res.unitary = ExactUnitary{m, cand->u, *sol.y, k, 0};
            res.unitary.validate();
            res.k = k;
            res.circuit = synth_exact(ExactUnitary::from_matrix(res.unitary.matrix() * prefix));
            res.distance = phase_distance(eval_circuit(res.circuit), theta);
            if (!(res.distance <= eps)) {
                throw VerificationFailure("fallback circuit misses the target precision");
            }
            const Real cost(res.circuit.cost());
            const Real cap = fallback_cost_bound(eps, m);
            if (m == RingOrder::M12 ? cost >= cap : cost > cap) {
                throw InternalError("fallback circuit exceeds its cost bound");
            }
            return res;
        }
    }
    throw AssumptionFailure("no feasible candidate with an easy norm equation within the budget");
}

} // namespace pqf
