#pragma once

// Arbitrary-precision reals and rigorous real/complex intervals on top of MPFR.
//
// Real values are created at the calling thread's working precision, which is
// changed with PrecisionScope. Interval endpoints are computed with directed
// rounding so that every Interval encloses the exact result of the operations
// that produced it.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <utility>

namespace pqf {

long working_precision();

/// RAII override of the thread's working precision (in bits).
class PrecisionScope {
  public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

  private:
    long saved_;
};

/// Default precision for a target accuracy eps: 4*ceil(log2(1/eps)) + 64 bits.
long precision_for_eps(double log2_inv_eps);

class Real {
  public:
    Real();
    Real(double v); // NOLINT(google-explicit-constructor)
    Real(long v);   // NOLINT(google-explicit-constructor)
    Real(int v) : Real(static_cast<long>(v)) {}
    explicit Real(const mpz_class &v);
    explicit Real(const mpq_class &v);
    static Real parse(const std::string &s);
    static Real pi();

    Real(const Real &o);
    Real(Real &&o) noexcept;
    Real &operator=(const Real &o);
    Real &operator=(Real &&o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class round() const; // nearest integer, ties away from zero
    mpz_class floor() const;
    mpz_class ceil() const;
    std::string str(int digits = 20) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real &operator+=(const Real &o);
    Real &operator-=(const Real &o);
    Real &operator*=(const Real &o);
    Real &operator/=(const Real &o);

    friend Real operator+(Real a, const Real &b) { return a += b; }
    friend Real operator-(Real a, const Real &b) { return a -= b; }
    friend Real operator*(Real a, const Real &b) { return a *= b; }
    friend Real operator/(Real a, const Real &b) { return a /= b; }
    Real operator-() const;

    friend bool operator==(const Real &a, const Real &b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real &a, const Real &b);

  private:
    mpfr_t v_;
};

Real abs(const Real &x);
Real sqrt(const Real &x);
Real sin(const Real &x);
Real cos(const Real &x);
Real atan2(const Real &y, const Real &x);
Real log2(const Real &x);
Real log(const Real &x);
Real exp2(const Real &x);
Real pow(const Real &x, const Real &y);
Real hypot(const Real &x, const Real &y);
Real min(const Real &a, const Real &b);
Real max(const Real &a, const Real &b);

/// Closed interval [lo, hi] with outward-rounded arithmetic.
class Interval {
  public:
    Interval() : lo_(0L), hi_(0L) {}
    Interval(long v) : lo_(v), hi_(v) {} // NOLINT(google-explicit-constructor)
    explicit Interval(const mpz_class &v);
    Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
    /// Exact point interval of a Real (its binary value is taken as exact).
    static Interval point(const Real &x) { return {x, x}; }
    static Interval sqrt_of(const mpz_class &n);
    static Interval pi();

    const Real &lo() const { return lo_; }
    const Real &hi() const { return hi_; }
    Real mid() const;
    Real width() const;

    bool certainly_positive() const { return lo_.sign() > 0; }
    bool certainly_negative() const { return hi_.sign() < 0; }
    bool certainly_nonneg() const { return lo_.sign() >= 0; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool certainly_less(const Interval &o) const { return hi_ < o.lo_; }
    bool certainly_le(const Interval &o) const { return hi_ <= o.lo_; }
    bool contains(const Real &x) const { return lo_ <= x && x <= hi_; }

    friend Interval operator+(const Interval &a, const Interval &b);
    friend Interval operator-(const Interval &a, const Interval &b);
    friend Interval operator*(const Interval &a, const Interval &b);
    friend Interval operator/(const Interval &a, const Interval &b);
    Interval operator-() const { return {-hi_, -lo_}; }

  private:
    Real lo_, hi_;
};

Interval sqrt(const Interval &x);
Interval abs(const Interval &x);
Interval sqr(const Interval &x);
/// Enclosure of sin/cos over the interval using the Lipschitz bound.
Interval sin(const Interval &x);
Interval cos(const Interval &x);
Interval hull(const Interval &a, const Interval &b);

/// Rectangular complex interval.
struct ComplexInterval {
    Interval re, im;

    ComplexInterval conj() const { return {re, -im}; }
    Interval norm_sq() const { return sqr(re) + sqr(im); }
    friend ComplexInterval operator+(const ComplexInterval &a, const ComplexInterval &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval &a, const ComplexInterval &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval &a, const ComplexInterval &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    /// e^{i t} enclosure.
    static ComplexInterval expi(const Interval &t) { return {cos(t), sin(t)}; }
};

Interval abs(const ComplexInterval &z);
ComplexInterval operator/(const ComplexInterval &a, const ComplexInterval &b);

} // namespace pqf
