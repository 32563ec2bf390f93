#include "pqf/rings.hpp"

#include "pqf/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pqf {

RingOrder ring_order_from_int(int m) {
    switch (m) {
    case 4:
        return RingOrder::M4;
    case 8:
        return RingOrder::M8;
    case 12:
        return RingOrder::M12;
    default:
        throw InvalidInput("unsupported ring order " + std::to_string(m));
    }
}

namespace {

// Reduce a polynomial in zeta (arbitrary length) into the canonical basis.
void reduce(RingOrder m, std::vector<mpz_class> &p) {
    const int d = degree(m);
    for (int k = static_cast<int>(p.size()) - 1; k >= d; --k) {
        const mpz_class c = p[static_cast<std::size_t>(k)];
        if (c == 0) {
            continue;
        }
        p[static_cast<std::size_t>(k)] = 0;
        switch (m) {
        case RingOrder::M4:
            p[static_cast<std::size_t>(k - 2)] -= c;
            break;
        case RingOrder::M8:
            p[static_cast<std::size_t>(k - 4)] -= c;
            break;
        case RingOrder::M12:
            p[static_cast<std::size_t>(k - 2)] += c;
            p[static_cast<std::size_t>(k - 4)] -= c;
            break;
        }
    }
    p.resize(static_cast<std::size_t>(d));
}

// zeta^j for j = 0..m-1, built once per ring.
const std::vector<CycInt> &zeta_table(RingOrder m) {
    static const auto tables = [] {
        std::map<RingOrder, std::vector<CycInt>> t;
        for (RingOrder r : {RingOrder::M4, RingOrder::M8, RingOrder::M12}) {
            const int n = as_int(r);
            const int d = degree(r);
            std::vector<CycInt> powers;
            for (int j = 0; j < n; ++j) {
                std::vector<mpz_class> p(static_cast<std::size_t>(std::max(j + 1, d)), 0);
                p[static_cast<std::size_t>(j)] = 1;
                reduce(r, p);
                powers.emplace_back(r, std::move(p));
            }
            t.emplace(r, std::move(powers));
        }
        return t;
    }();
    return tables.at(m);
}

void require_same(const CycInt &a, const CycInt &b) {
    if (a.order() != b.order()) {
        throw PreconditionViolated("mixed ring orders in cyclotomic arithmetic");
    }
}

std::vector<int> galois_exponents(RingOrder m) {
    switch (m) {
    case RingOrder::M4:
        return {1, 3};
    case RingOrder::M8:
        return {1, 3, 5, 7};
    case RingOrder::M12:
        return {1, 5, 7, 11};
    }
    return {};
}

mpz_class round_div(const mpz_class &n, const mpz_class &d) {
    // nearest integer to n/d for d > 0
    mpz_class q;
    mpz_class num = 2 * n + d;
    mpz_class den = 2 * d;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace

// ---------------------------------------------------------------- CycInt

CycInt::CycInt(RingOrder m) : m_(m), c_(static_cast<std::size_t>(degree(m)), 0) {}

CycInt::CycInt(RingOrder m, std::vector<mpz_class> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != degree(m)) {
        if (static_cast<int>(c_.size()) < degree(m)) {
            c_.resize(static_cast<std::size_t>(degree(m)), 0);
        } else {
            reduce(m, c_);
        }
    }
}

CycInt::CycInt(RingOrder m, std::initializer_list<long> coeffs) : m_(m) {
    for (long v : coeffs) {
        c_.emplace_back(v);
    }
    if (static_cast<int>(c_.size()) < degree(m)) {
        c_.resize(static_cast<std::size_t>(degree(m)), 0);
    } else {
        reduce(m, c_);
    }
}

CycInt CycInt::from_int(RingOrder m, const mpz_class &v) {
    CycInt z(m);
    z.c_[0] = v;
    return z;
}

CycInt CycInt::zeta_pow(RingOrder m, long k) {
    const long n = as_int(m);
    return zeta_table(m)[static_cast<std::size_t>(((k % n) + n) % n)];
}

bool CycInt::is_zero() const {
    for (const auto &c : c_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

std::string CycInt::str() const {
    std::ostringstream os;
    for (int j = 0; j < dim(); ++j) {
        if (j > 0) {
            os << " + ";
        }
        os << c_[static_cast<std::size_t>(j)];
        if (j == 1) {
            os << "*w";
        } else if (j > 1) {
            os << "*w^" << j;
        }
    }
    os << " (m=" << as_int(m_) << ")";
    return os.str();
}

CycInt &CycInt::operator+=(const CycInt &o) {
    require_same(*this, o);
    for (std::size_t j = 0; j < c_.size(); ++j) {
        c_[j] += o.c_[j];
    }
    return *this;
}

CycInt &CycInt::operator-=(const CycInt &o) {
    require_same(*this, o);
    for (std::size_t j = 0; j < c_.size(); ++j) {
        c_[j] -= o.c_[j];
    }
    return *this;
}

CycInt &CycInt::operator*=(const CycInt &o) {
    require_same(*this, o);
    const std::size_t d = c_.size();
    std::vector<mpz_class> p(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) {
            p[i + j] += c_[i] * o.c_[j];
        }
    }
    reduce(m_, p);
    c_ = std::move(p);
    return *this;
}

CycInt &CycInt::operator*=(const mpz_class &s) {
    for (auto &c : c_) {
        c *= s;
    }
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt r(*this);
    for (auto &c : r.c_) {
        c = -c;
    }
    return r;
}

std::optional<CycInt> CycInt::div_exact(const mpz_class &d) const {
    CycInt r(*this);
    for (auto &c : r.c_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
            return std::nullopt;
        }
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    return r;
}

bool CycInt::all_even() const {
    for (const auto &c : c_) {
        if (mpz_odd_p(c.get_mpz_t())) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- automorphisms, norms

CycInt galois(const CycInt &z, int k) {
    const auto &tab = zeta_table(z.order());
    const int n = as_int(z.order());
    CycInt r(z.order());
    for (int j = 0; j < z.dim(); ++j) {
        if (z[j] == 0) {
            continue;
        }
        const int e = (((j * k) % n) + n) % n;
        r += tab[static_cast<std::size_t>(e)] * z[j];
    }
    return r;
}

CycInt conj(const CycInt &z) { return galois(z, -1); }

CycInt bullet(const CycInt &z) {
    if (z.order() == RingOrder::M4) {
        throw PreconditionViolated("bullet automorphism is not used for m = 4");
    }
    std::vector<mpz_class> c = z.coeffs();
    for (std::size_t j = 1; j < c.size(); j += 2) {
        c[j] = -c[j];
    }
    return {z.order(), std::move(c)};
}

RealCycInt norm_sq(const CycInt &z) {
    auto r = RealCycInt::from_cyc(z * conj(z));
    if (!r) {
        throw InternalError("z z* is not in the real subring: " + z.str());
    }
    return *r;
}

mpz_class abs_norm(const RealCycInt &r) {
    if (r.order() == RingOrder::M4) {
        return r.a() * r.a();
    }
    return r.a() * r.a() - RealCycInt::rho_sq(r.order()) * r.b() * r.b();
}

namespace {
// Product of the non-identity Galois conjugates of z.
CycInt cofactor(const CycInt &z) {
    CycInt p = CycInt::from_int(z.order(), 1);
    for (int k : galois_exponents(z.order())) {
        if (k != 1) {
            p *= galois(z, k);
        }
    }
    return p;
}
} // namespace

mpz_class field_norm(const CycInt &z) {
    CycInt n = z * cofactor(z);
    return n[0];
}

namespace {
struct ZetaEnclosures {
    std::vector<ComplexInterval> powers;
};

ZetaEnclosures zeta_enclosures(RingOrder m) {
    ZetaEnclosures e;
    Interval half = Interval(1L) / Interval(2L);
    switch (m) {
    case RingOrder::M4:
        e.powers = {{Interval(1L), Interval(0L)}, {Interval(0L), Interval(1L)}};
        break;
    case RingOrder::M8: {
        Interval h = Interval::sqrt_of(2) * half;
        e.powers = {{Interval(1L), Interval(0L)}, {h, h}, {Interval(0L), Interval(1L)}, {-h, h}};
        break;
    }
    case RingOrder::M12: {
        Interval h = Interval::sqrt_of(3) * half;
        e.powers = {{Interval(1L), Interval(0L)}, {h, half}, {half, h}, {Interval(0L), Interval(1L)}};
        break;
    }
    }
    return e;
}
} // namespace

ComplexInterval eval_complex(const CycInt &z) {
    const auto zs = zeta_enclosures(z.order());
    ComplexInterval acc{Interval(0L), Interval(0L)};
    for (int j = 0; j < z.dim(); ++j) {
        if (z[j] == 0) {
            continue;
        }
        Interval c(z[j]);
        acc.re = acc.re + c * zs.powers[static_cast<std::size_t>(j)].re;
        acc.im = acc.im + c * zs.powers[static_cast<std::size_t>(j)].im;
    }
    return acc;
}

ComplexInterval eval_complex(const CycInt &z, long precision_bits) {
    PrecisionScope scope(precision_bits);
    return eval_complex(z);
}

// ---------------------------------------------------------------- Euclid

std::pair<CycInt, CycInt> euclid_divmod(const CycInt &a, const CycInt &b) {
    require_same(a, b);
    if (b.is_zero()) {
        throw PreconditionViolated("division by zero");
    }
    const CycInt co = cofactor(b);
    const mpz_class n = (b * co)[0];
    const CycInt num = a * co;
    std::vector<mpz_class> q0(static_cast<std::size_t>(a.dim()));
    for (int j = 0; j < a.dim(); ++j) {
        q0[static_cast<std::size_t>(j)] = round_div(num[j], n);
    }
    CycInt q(a.order(), q0);
    CycInt r = a - q * b;
    mpz_class best = field_norm(r);
    if (best < n) {
        return {q, r};
    }
    // Nearest-coordinate rounding can tie; search the floor/ceil neighbourhood.
    const int d = a.dim();
    for (int mask = 0; mask < (1 << d); ++mask) {
        std::vector<mpz_class> qc(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), num[j].get_mpz_t(), n.get_mpz_t());
            qc[static_cast<std::size_t>(j)] = ((mask >> j) & 1) ? fl + 1 : fl;
        }
        CycInt qq(a.order(), qc);
        CycInt rr = a - qq * b;
        mpz_class nr = field_norm(rr);
        if (nr < best) {
            best = nr;
            q = qq;
            r = rr;
        }
    }
    if (best >= n) {
        throw InternalError("Euclidean step failed to decrease the norm");
    }
    return {q, r};
}

CycInt euclid_gcd(CycInt a, CycInt b) {
    require_same(a, b);
    if (a.is_zero() && b.is_zero()) {
        throw PreconditionViolated("gcd(0, 0) is undefined");
    }
    while (!b.is_zero()) {
        auto [q, r] = euclid_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::optional<CycInt> div_exact(const CycInt &a, const CycInt &b) {
    require_same(a, b);
    if (b.is_zero()) {
        return std::nullopt;
    }
    const CycInt co = cofactor(b);
    const mpz_class n = (b * co)[0];
    return (a * co).div_exact(n);
}

std::optional<CycInt> unit_inverse(const CycInt &z) {
    if (z.is_zero()) {
        return std::nullopt;
    }
    const CycInt co = cofactor(z);
    const mpz_class n = (z * co)[0];
    if (n != 1) {
        return std::nullopt;
    }
    return co;
}

// ---------------------------------------------------------------- RealCycInt

RealCycInt::RealCycInt(RingOrder m, mpz_class a, mpz_class b) : m_(m), a_(std::move(a)), b_(std::move(b)) {
    if (m_ == RingOrder::M4 && b_ != 0) {
        throw PreconditionViolated("Z[rho] = Z for m = 4");
    }
}

RealCycInt RealCycInt::fundamental_unit(RingOrder m) {
    switch (m) {
    case RingOrder::M8:
        return {m, 1, 1};
    case RingOrder::M12:
        return {m, 2, 1};
    case RingOrder::M4:
        break;
    }
    throw PreconditionViolated("Z has no fundamental unit");
}

std::string RealCycInt::str() const {
    std::ostringstream os;
    os << a_;
    if (m_ != RingOrder::M4) {
        os << (b_ < 0 ? " - " : " + ") << abs(b_) << "*sqrt" << rho_sq(m_);
    }
    return os.str();
}

RealCycInt RealCycInt::operator+(const RealCycInt &o) const { return {m_, a_ + o.a_, b_ + o.b_}; }
RealCycInt RealCycInt::operator-(const RealCycInt &o) const { return {m_, a_ - o.a_, b_ - o.b_}; }
RealCycInt RealCycInt::operator*(const RealCycInt &o) const {
    return {m_, a_ * o.a_ + rho_sq(m_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
}

std::optional<RealCycInt> RealCycInt::div_exact(const RealCycInt &d) const {
    const mpz_class n = abs_norm(d);
    if (n == 0) {
        return std::nullopt;
    }
    if (m_ == RingOrder::M4) {
        if (!mpz_divisible_p(a_.get_mpz_t(), d.a_.get_mpz_t())) {
            return std::nullopt;
        }
        return RealCycInt(m_, a_ / d.a_);
    }
    RealCycInt num = *this * d.bullet();
    if (!mpz_divisible_p(num.a_.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.b_.get_mpz_t(), n.get_mpz_t())) {
        return std::nullopt;
    }
    return RealCycInt(m_, num.a_ / n, num.b_ / n);
}

int RealCycInt::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0 || m_ == RingOrder::M4) {
        return sa;
    }
    if (sa == 0 || sa == sb) {
        return sb;
    }
    const mpz_class lhs = a_ * a_;
    const mpz_class rhs = rho_sq(m_) * b_ * b_;
    return lhs > rhs ? sa : sb;
}

Interval RealCycInt::eval() const {
    if (m_ == RingOrder::M4 || b_ == 0) {
        return Interval(a_);
    }
    return Interval(a_) + Interval(b_) * Interval::sqrt_of(rho_sq(m_));
}

Real RealCycInt::approx() const {
    if (m_ == RingOrder::M4 || b_ == 0) {
        return Real(a_);
    }
    return Real(a_) + Real(b_) * sqrt(Real(rho_sq(m_)));
}

CycInt RealCycInt::embed() const {
    switch (m_) {
    case RingOrder::M4:
        return CycInt(m_, std::vector<mpz_class>{a_, 0});
    case RingOrder::M8: // rho = zeta - zeta^3
        return CycInt(m_, std::vector<mpz_class>{a_, b_, 0, -b_});
    case RingOrder::M12: // rho = 2 zeta - zeta^3
        return CycInt(m_, std::vector<mpz_class>{a_, 2 * b_, 0, -b_});
    }
    return CycInt(m_);
}

std::optional<RealCycInt> RealCycInt::from_cyc(const CycInt &z) {
    switch (z.order()) {
    case RingOrder::M4:
        if (z[1] != 0) {
            return std::nullopt;
        }
        return RealCycInt(z.order(), z[0]);
    case RingOrder::M8:
        if (z[2] != 0 || z[1] != -z[3]) {
            return std::nullopt;
        }
        return RealCycInt(z.order(), z[0], z[1]);
    case RingOrder::M12:
        if (z[2] != 0 || z[1] != -2 * z[3]) {
            return std::nullopt;
        }
        return RealCycInt(z.order(), z[0], -z[3]);
    }
    return std::nullopt;
}

RealCycInt real_gcd(RealCycInt a, RealCycInt b) {
    const RingOrder m = a.order();
    if (m == RingOrder::M4) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.a().get_mpz_t(), b.a().get_mpz_t());
        return {m, g};
    }
    while (!b.is_zero()) {
        const mpz_class n = abs_norm(b);
        RealCycInt num = a * b.bullet();
        mpz_class qa, qb;
        if (n > 0) {
            qa = round_div(num.a(), n);
            qb = round_div(num.b(), n);
        } else {
            qa = round_div(-num.a(), -n);
            qb = round_div(-num.b(), -n);
        }
        RealCycInt r = a - RealCycInt(m, qa, qb) * b;
        if (abs(abs_norm(r)) >= abs(n)) {
            throw InternalError("Z[rho] Euclidean step failed");
        }
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// ---------------------------------------------------------------- parity

std::uint8_t parity_bits(const CycInt &z) {
    std::uint8_t bits = 0;
    for (int j = 0; j < z.dim(); ++j) {
        if (mpz_odd_p(z[j].get_mpz_t())) {
            bits = static_cast<std::uint8_t>(bits | (1u << j));
        }
    }
    return bits;
}

std::uint8_t residue_mul_zeta(RingOrder m, std::uint8_t residue, int k) {
    const int n = as_int(m);
    k = ((k % n) + n) % n;
    for (int s = 0; s < k; ++s) {
        const bool top = (residue & 0b1000) != 0;
        residue = static_cast<std::uint8_t>((residue << 1) & 0b1111);
        if (top) {
            // zeta^4 = -1 (m = 8) or zeta^2 - 1 (m = 12), both read mod 2
            residue ^= (m == RingOrder::M8) ? 0b0001 : 0b0101;
        }
    }
    return residue;
}

namespace {
struct OrbitTable {
    std::array<Orbit, 16> orbit{};
    std::array<std::uint8_t, 4> n2{};
    std::array<int, 4> sizes{};
};

const OrbitTable &orbit_table() {
    static const OrbitTable table = [] {
        OrbitTable t;
        std::array<int, 16> label{};
        label.fill(-1);
        auto mark = [&](std::uint8_t seed, Orbit o) {
            for (int k = 0; k < 12; ++k) {
                label[residue_mul_zeta(RingOrder::M12, seed, k)] = static_cast<int>(o);
            }
        };
        mark(0b0000, Orbit::O0);
        mark(0b0001, Orbit::O1); // 1
        mark(0b0011, Orbit::O2); // 1 + w
        mark(0b1001, Orbit::O3); // 1 + w^3
        for (int r = 0; r < 16; ++r) {
            if (label[static_cast<std::size_t>(r)] < 0) {
                throw InternalError("Z_2[w] residue outside the four orbits");
            }
            const auto o = static_cast<Orbit>(label[static_cast<std::size_t>(r)]);
            t.orbit[static_cast<std::size_t>(r)] = o;
            t.sizes[static_cast<std::size_t>(o)]++;
            CycInt lift(RingOrder::M12, {r & 1, (r >> 1) & 1, (r >> 2) & 1, (r >> 3) & 1});
            t.n2[static_cast<std::size_t>(o)] = parity_bits(norm_sq(lift).embed());
        }
        return t;
    }();
    return table;
}
} // namespace

ParityClass parity_mu(const CycInt &z) {
    if (z.order() != RingOrder::M12) {
        throw PreconditionViolated("parity_mu is defined on Z[omega_12]");
    }
    const auto &t = orbit_table();
    ParityClass p;
    p.residue = parity_bits(z);
    p.orbit = t.orbit[p.residue];
    p.n2 = t.n2[static_cast<std::size_t>(p.orbit)];
    return p;
}

std::array<int, 4> orbit_sizes_pi12() { return orbit_table().sizes; }

// ---------------------------------------------------------------- units

CycInt unit_adjust(const CycInt &y, const RealCycInt &target) {
    const RingOrder m = y.order();
    const RealCycInt n = norm_sq(y);
    if (n == target) {
        return y;
    }
    if (target.is_zero() || n.is_zero()) {
        throw NotAdjustable("zero norm mismatch");
    }
    auto u = n.div_exact(target);
    if (!u || abs(abs_norm(*u)) != 1) {
        throw NotAdjustable("norm ratio is not a unit");
    }
    if (m == RingOrder::M4 || u->sign() <= 0 || u->bullet().sign() <= 0) {
        throw NotAdjustable("norm ratio is not a totally positive unit");
    }
    // u = v^k; find k.
    const RealCycInt v = RealCycInt::fundamental_unit(m);
    const RealCycInt vinv = *RealCycInt(m, 1).div_exact(v);
    const RealCycInt one(m, 1);
    long k = 0;
    RealCycInt w = *u;
    const bool above = w.cmp(one) > 0;
    while (!(w == one)) {
        w = w * (above ? vinv : v);
        k += above ? 1 : -1;
        if (std::labs(k) > 100000) {
            throw InternalError("unit exponent search diverged");
        }
    }
    CycInt out = y;
    if (m == RingOrder::M8) {
        if (k % 2 != 0) {
            throw NotAdjustable("odd power of 1+sqrt2 is not a norm");
        }
        const CycInt step = (k > 0 ? vinv : v).embed();
        for (long s = 0; s < std::labs(k) / 2; ++s) {
            out *= step;
        }
    } else {
        // |1 + w|^2 = 2 + sqrt3 = v
        const CycInt onew(m, {1, 1});
        const CycInt step = k > 0 ? *unit_inverse(onew) : onew;
        for (long s = 0; s < std::labs(k); ++s) {
            out *= step;
        }
    }
    if (!(norm_sq(out) == target)) {
        throw InternalError("unit adjustment produced the wrong norm");
    }
    return out;
}

} // namespace pqf
