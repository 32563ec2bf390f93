#pragma once

// Exact arithmetic in the cyclotomic rings Z[zeta_m], m in {4, 8, 12}, and in
// their real subrings Z[rho], rho = zeta + zeta^*.
//
// Elements of Z[zeta_m] are stored low-degree-first in the power basis
// {1, zeta, ..., zeta^{d-1}}, d = phi(m). Reduction uses the minimal polynomial
//   m = 4:  zeta^2 = -1
//   m = 8:  zeta^4 = -1
//   m = 12: zeta^4 = zeta^2 - 1
// so equal ring elements always have identical coefficient vectors.

#include "pqf/real.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqf {

/// Ring order m of Z[zeta_m].
enum class RingOrder : int { M4 = 4, M8 = 8, M12 = 12 };

constexpr int as_int(RingOrder m) { return static_cast<int>(m); }
constexpr int degree(RingOrder m) { return m == RingOrder::M4 ? 2 : 4; }
RingOrder ring_order_from_int(int m);

class RealCycInt;

class CycInt {
  public:
    explicit CycInt(RingOrder m = RingOrder::M8);
    CycInt(RingOrder m, std::vector<mpz_class> coeffs);
    CycInt(RingOrder m, std::initializer_list<long> coeffs);

    static CycInt from_int(RingOrder m, const mpz_class &v);
    /// zeta_m^k for any integer k.
    static CycInt zeta_pow(RingOrder m, long k);
    /// i = zeta_m^{m/4}.
    static CycInt imag_unit(RingOrder m) { return zeta_pow(m, as_int(m) / 4); }

    RingOrder order() const { return m_; }
    int dim() const { return degree(m_); }
    const std::vector<mpz_class> &coeffs() const { return c_; }
    const mpz_class &operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }

    bool is_zero() const;
    std::string str() const;

    CycInt &operator+=(const CycInt &o);
    CycInt &operator-=(const CycInt &o);
    CycInt &operator*=(const CycInt &o);
    CycInt &operator*=(const mpz_class &s);
    friend CycInt operator+(CycInt a, const CycInt &b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt &b) { return a -= b; }
    friend CycInt operator*(CycInt a, const CycInt &b) { return a *= b; }
    friend CycInt operator*(CycInt a, const mpz_class &s) { return a *= s; }
    friend CycInt operator*(const mpz_class &s, CycInt a) { return a *= s; }
    CycInt operator-() const;
    friend bool operator==(const CycInt &a, const CycInt &b) { return a.m_ == b.m_ && a.c_ == b.c_; }

    /// Exact division by a rational integer; nullopt if some coefficient is not divisible.
    std::optional<CycInt> div_exact(const mpz_class &d) const;
    /// True if every coefficient is even.
    bool all_even() const;

  private:
    RingOrder m_;
    std::vector<mpz_class> c_;
};

/// Element a + b*rho of Z[rho] (b is always 0 for m = 4, where Z[rho] = Z).
class RealCycInt {
  public:
    explicit RealCycInt(RingOrder m = RingOrder::M8) : m_(m) {}
    RealCycInt(RingOrder m, mpz_class a, mpz_class b = 0);

    RingOrder order() const { return m_; }
    const mpz_class &a() const { return a_; }
    const mpz_class &b() const { return b_; }
    /// rho^2 as an integer: 2 for m = 8, 3 for m = 12, 0 for m = 4.
    static long rho_sq(RingOrder m) { return m == RingOrder::M8 ? 2 : (m == RingOrder::M12 ? 3 : 0); }
    /// Fundamental unit 1 + sqrt2 (m = 8) or 2 + sqrt3 (m = 12).
    static RealCycInt fundamental_unit(RingOrder m);

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    std::string str() const;

    RealCycInt operator+(const RealCycInt &o) const;
    RealCycInt operator-(const RealCycInt &o) const;
    RealCycInt operator*(const RealCycInt &o) const;
    RealCycInt operator-() const { return {m_, -a_, -b_}; }
    friend bool operator==(const RealCycInt &x, const RealCycInt &y) {
        return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// a - b*rho.
    RealCycInt bullet() const { return {m_, a_, -b_}; }
    /// Exact quotient in Z[rho], if it exists.
    std::optional<RealCycInt> div_exact(const RealCycInt &d) const;
    /// Exact sign of the real number a + b*rho.
    int sign() const;
    /// Exact comparison of real values.
    int cmp(const RealCycInt &o) const { return (*this - o).sign(); }
    Interval eval() const;
    Real approx() const;

    CycInt embed() const;
    /// Inverse of embed; nullopt when z is not in the real subring.
    static std::optional<RealCycInt> from_cyc(const CycInt &z);

  private:
    RingOrder m_;
    mpz_class a_{0}, b_{0};
};

/// Complex conjugation (zeta -> zeta^{-1}).
CycInt conj(const CycInt &z);
/// Galois automorphism zeta -> -zeta (m = 8, 12 only).
CycInt bullet(const CycInt &z);
/// Galois automorphism zeta -> zeta^k, gcd(k, m) = 1.
CycInt galois(const CycInt &z, int k);
/// |z|^2 = z z^* in Z[rho].
RealCycInt norm_sq(const CycInt &z);
/// Absolute norm r r^bullet (r^2 for m = 4).
mpz_class abs_norm(const RealCycInt &r);
/// Absolute norm of z over Q (product of all Galois conjugates); non-negative.
mpz_class field_norm(const CycInt &z);
/// Rigorous enclosure of the complex value of z.
ComplexInterval eval_complex(const CycInt &z);
/// Same, evaluated at the given precision.
ComplexInterval eval_complex(const CycInt &z, long precision_bits);
/// Euclidean gcd in Z[zeta_m], determined up to a unit.
CycInt euclid_gcd(CycInt a, CycInt b);
/// Euclidean division: returns (q, r) with a = q b + r and N(r) < N(b).
std::pair<CycInt, CycInt> euclid_divmod(const CycInt &a, const CycInt &b);
/// Exact quotient a / b in Z[zeta_m], if it exists.
std::optional<CycInt> div_exact(const CycInt &a, const CycInt &b);
/// Multiplicative inverse when z is a unit.
std::optional<CycInt> unit_inverse(const CycInt &z);

/// Euclidean gcd in Z[rho] (m = 8, 12) or Z (m = 4), up to a unit.
RealCycInt real_gcd(RealCycInt a, RealCycInt b);

/// Parity classes of Z_2[omega_12] under multiplication by powers of omega_12.
enum class Orbit : int { O0 = 0, O1 = 1, O2 = 2, O3 = 3 };

struct ParityClass {
    std::uint8_t residue = 0; ///< bit j = coefficient of omega^j mod 2
    Orbit orbit = Orbit::O0;
    std::uint8_t n2 = 0; ///< residue of N_2 on the orbit (0, 1 or omega^3 = 0b1000)
};

/// Parity morphism mu: Z[omega_12] -> Z_2[omega_12] and orbit classification.
ParityClass parity_mu(const CycInt &z);
/// Residue bits of z mod 2 (any m).
std::uint8_t parity_bits(const CycInt &z);
/// Multiply a residue by omega^k in Z_2[omega] (m = 8 or 12).
std::uint8_t residue_mul_zeta(RingOrder m, std::uint8_t residue, int k);
/// Orbit sizes computed by exhaustion over Z_2[omega_12], indexed by Orbit.
std::array<int, 4> orbit_sizes_pi12();

class NotAdjustable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Multiply y by a unit so that norm_sq(y) == target exactly.
/// Throws NotAdjustable when norm_sq(y)/target is not the norm of a unit.
CycInt unit_adjust(const CycInt &y, const RealCycInt &target);

} // namespace pqf
