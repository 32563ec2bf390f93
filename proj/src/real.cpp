#include "pqf/real.hpp"

#include "pqf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pqf {

namespace {
thread_local long g_precision = 256;

mpfr_prec_t clamp_prec(long bits) {
    return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, 1L << 24));
}
} // namespace

long working_precision() { return g_precision; }

PrecisionScope::PrecisionScope(long bits) : saved_(g_precision) { g_precision = bits; }
PrecisionScope::~PrecisionScope() { g_precision = saved_; }

long precision_for_eps(double log2_inv_eps) {
    return 4 * static_cast<long>(std::ceil(std::max(log2_inv_eps, 1.0))) + 64;
}

// ---------------------------------------------------------------- Real

Real::Real() {
    mpfr_init2(v_, clamp_prec(g_precision));
    mpfr_set_zero(v_, 1);
}

Real::Real(double v) {
    mpfr_init2(v_, clamp_prec(std::max<long>(g_precision, 53)));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v) {
    mpfr_init2(v_, clamp_prec(std::max<long>(g_precision, 64)));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class &v) {
    mpfr_init2(v_, clamp_prec(g_precision));
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class &v) {
    mpfr_init2(v_, clamp_prec(g_precision));
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(const std::string &s) {
    char *end = nullptr;
    Real r;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0' || mpfr_nan_p(r.v_)) {
        throw InvalidInput("not a number: " + s);
    }
    return r;
}

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real::Real(const Real &o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real &&o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real &Real::operator=(const Real &o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

mpz_class Real::round() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
    return z;
}

mpz_class Real::floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

mpz_class Real::ceil() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
    return z;
}

std::string Real::str(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return buf.data();
}

namespace {
// Binary operation at the larger of the operand / working precisions.
template <typename F>
void binop(mpfr_t dst, mpfr_srcptr b, F f) {
    const mpfr_prec_t p = std::max({mpfr_get_prec(dst), mpfr_get_prec(b), clamp_prec(g_precision)});
    if (p != mpfr_get_prec(dst)) {
        mpfr_prec_round(dst, p, MPFR_RNDN);
    }
    f(dst, dst, b, MPFR_RNDN);
}
} // namespace

Real &Real::operator+=(const Real &o) {
    binop(v_, o.v_, mpfr_add);
    return *this;
}
Real &Real::operator-=(const Real &o) {
    binop(v_, o.v_, mpfr_sub);
    return *this;
}
Real &Real::operator*=(const Real &o) {
    binop(v_, o.v_, mpfr_mul);
    return *this;
}
Real &Real::operator/=(const Real &o) {
    binop(v_, o.v_, mpfr_div);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real &a, const Real &b) {
    if (mpfr_unordered_p(a.v_, b.v_)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {
template <typename F>
Real unary(const Real &x, F f) {
    Real r;
    if (r.precision() < x.precision()) {
        mpfr_set_prec(r.get(), x.precision());
    }
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}
} // namespace

Real abs(const Real &x) { return unary(x, mpfr_abs); }
Real sqrt(const Real &x) { return unary(x, mpfr_sqrt); }
Real sin(const Real &x) { return unary(x, mpfr_sin); }
Real cos(const Real &x) { return unary(x, mpfr_cos); }
Real log2(const Real &x) { return unary(x, mpfr_log2); }
Real log(const Real &x) { return unary(x, mpfr_log); }
Real exp2(const Real &x) { return unary(x, mpfr_exp2); }

Real atan2(const Real &y, const Real &x) {
    Real r;
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real &x, const Real &y) {
    Real r;
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real hypot(const Real &x, const Real &y) {
    Real r;
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real min(const Real &a, const Real &b) { return a < b ? a : b; }
Real max(const Real &a, const Real &b) { return a < b ? b : a; }

// ---------------------------------------------------------------- Interval

namespace {
Real rounded(mpfr_rnd_t rnd, auto f) {
    Real r;
    f(r.get(), rnd);
    return r;
}
} // namespace

Interval::Interval(const mpz_class &v)
    : lo_(rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_set_z(r, v.get_mpz_t(), m); })),
      hi_(rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_set_z(r, v.get_mpz_t(), m); })) {}

Interval Interval::sqrt_of(const mpz_class &n) {
    return sqrt(Interval(n));
}

Interval Interval::pi() {
    return {rounded(MPFR_RNDD, [](mpfr_ptr r, mpfr_rnd_t m) { mpfr_const_pi(r, m); }),
            rounded(MPFR_RNDU, [](mpfr_ptr r, mpfr_rnd_t m) { mpfr_const_pi(r, m); })};
}

Real Interval::mid() const {
    Real s = lo_ + hi_;
    mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
    return s;
}

Real Interval::width() const {
    return rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, hi_.get(), lo_.get(), m); });
}

Interval operator+(const Interval &a, const Interval &b) {
    return {rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.lo_.get(), b.lo_.get(), m); }),
            rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.hi_.get(), b.hi_.get(), m); })};
}

Interval operator-(const Interval &a, const Interval &b) {
    return {rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, a.lo_.get(), b.hi_.get(), m); }),
            rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, a.hi_.get(), b.lo_.get(), m); })};
}

Interval operator*(const Interval &a, const Interval &b) {
    const Real *xs[2] = {&a.lo_, &a.hi_};
    const Real *ys[2] = {&b.lo_, &b.hi_};
    Real lo, hi;
    bool first = true;
    for (const Real *x : xs) {
        for (const Real *y : ys) {
            Real l = rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, x->get(), y->get(), m); });
            Real h = rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, x->get(), y->get(), m); });
            if (first || l < lo) {
                lo = std::move(l);
            }
            if (first || h > hi) {
                hi = std::move(h);
            }
            first = false;
        }
    }
    return {std::move(lo), std::move(hi)};
}

Interval operator/(const Interval &a, const Interval &b) {
    if (b.contains_zero()) {
        throw PrecisionExhausted("interval division by an interval containing zero");
    }
    const Real *xs[2] = {&a.lo_, &a.hi_};
    const Real *ys[2] = {&b.lo_, &b.hi_};
    Real lo, hi;
    bool first = true;
    for (const Real *x : xs) {
        for (const Real *y : ys) {
            Real l = rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, x->get(), y->get(), m); });
            Real h = rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, x->get(), y->get(), m); });
            if (first || l < lo) {
                lo = std::move(l);
            }
            if (first || h > hi) {
                hi = std::move(h);
            }
            first = false;
        }
    }
    return {std::move(lo), std::move(hi)};
}

Interval sqrt(const Interval &x) {
    if (x.hi().sign() < 0) {
        throw InternalError("sqrt of a negative interval");
    }
    Real lo = x.lo().sign() <= 0
                  ? Real(0L)
                  : rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sqrt(r, x.lo().get(), m); });
    Real hi = rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sqrt(r, x.hi().get(), m); });
    return {std::move(lo), std::move(hi)};
}

Interval abs(const Interval &x) {
    if (x.lo().sign() >= 0) {
        return x;
    }
    if (x.hi().sign() <= 0) {
        return -x;
    }
    return {Real(0L), max(-x.lo(), x.hi())};
}

Interval sqr(const Interval &x) {
    Interval a = abs(x);
    return {rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sqr(r, a.lo().get(), m); }),
            rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sqr(r, a.hi().get(), m); })};
}

namespace {
// f is 1-Lipschitz; enclose f over [lo, hi] by f(lo) +- width.
Interval lipschitz_enclosure(const Interval &x, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real w = x.width();
    Real flo = rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { f(r, x.lo().get(), m); });
    Real fhi = rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { f(r, x.lo().get(), m); });
    Real lo = rounded(MPFR_RNDD, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, flo.get(), w.get(), m); });
    Real hi = rounded(MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, fhi.get(), w.get(), m); });
    return {max(lo, Real(-1L)), min(hi, Real(1L))};
}
} // namespace

Interval sin(const Interval &x) { return lipschitz_enclosure(x, mpfr_sin); }
Interval cos(const Interval &x) { return lipschitz_enclosure(x, mpfr_cos); }

Interval hull(const Interval &a, const Interval &b) {
    return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

Interval abs(const ComplexInterval &z) { return sqrt(z.norm_sq()); }

ComplexInterval operator/(const ComplexInterval &a, const ComplexInterval &b) {
    Interval d = b.norm_sq();
    ComplexInterval n = a * b.conj();
    return {n.re / d, n.im / d};
}

} // namespace pqf
