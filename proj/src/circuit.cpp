#include "pqf/exact.hpp"

#include "pqf/errors.hpp"

#include <regex>
#include <sstream>

namespace pqf {

RingOrder basis_ring(Basis b) {
    switch (b) {
    case Basis::T:
        return RingOrder::M8;
    case Basis::PI12:
        return RingOrder::M12;
    case Basis::V:
        return RingOrder::M4;
    }
    return RingOrder::M8;
}

std::string basis_name(Basis b) {
    switch (b) {
    case Basis::T:
        return "T";
    case Basis::PI12:
        return "pi12";
    case Basis::V:
        return "V";
    }
    return "?";
}

Basis basis_from_name(const std::string &s) {
    if (s == "T" || s == "t" || s == "clifford+t") {
        return Basis::T;
    }
    if (s == "pi12" || s == "PI12" || s == "pi/12" || s == "clifford+pi12") {
        return Basis::PI12;
    }
    if (s == "V" || s == "v" || s == "clifford+v") {
        return Basis::V;
    }
    throw InvalidInput("unknown basis '" + s + "' (expected T, pi12 or V)");
}

namespace {

CycInt nu_sq_pow(RingOrder m, long L) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), m == RingOrder::M4 ? 5 : 2, static_cast<unsigned long>(L));
    return CycInt::from_int(m, v);
}

CycInt sqrt2_m8() { return CycInt(RingOrder::M8, {0, 1, 0, -1}); }

bool all_divisible(const ExactMatrix &M, const CycInt &d) {
    return div_exact(M.a, d) && div_exact(M.b, d) && div_exact(M.c, d) && div_exact(M.d, d);
}

bool all_divisible(const ExactMatrix &M, const mpz_class &d) {
    return M.a.div_exact(d) && M.b.div_exact(d) && M.c.div_exact(d) && M.d.div_exact(d);
}

} // namespace

ExactMatrix ExactMatrix::identity(RingOrder m) {
    return {m, CycInt::from_int(m, 1), CycInt(m), CycInt(m), CycInt::from_int(m, 1), 0};
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix &o) const {
    if (m != o.m) {
        throw PreconditionViolated("mixed ring orders in matrix product");
    }
    return {m, a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, L + o.L};
}

ExactMatrix ExactMatrix::dagger() const { return {m, conj(a), conj(c), conj(b), conj(d), L}; }

ExactMatrix ExactMatrix::scaled(const CycInt &s) const { return {m, a * s, b * s, c * s, d * s, L}; }

ExactMatrix ExactMatrix::reduced() const {
    ExactMatrix r = *this;
    if (m == RingOrder::M8) {
        const CycInt s2 = sqrt2_m8();
        while (r.L > 0 && all_divisible(r, s2)) {
            r = {m, *div_exact(r.a, s2), *div_exact(r.b, s2), *div_exact(r.c, s2), *div_exact(r.d, s2), r.L - 1};
        }
        return r;
    }
    const mpz_class q = m == RingOrder::M4 ? 5 : 2;
    while (r.L >= 2 && all_divisible(r, q)) {
        r = {m, *r.a.div_exact(q), *r.b.div_exact(q), *r.c.div_exact(q), *r.d.div_exact(q), r.L - 2};
    }
    return r;
}

bool equal_up_to_phase(const ExactMatrix &A, const ExactMatrix &B) {
    const ExactMatrix P = A * B.dagger();
    return P.b.is_zero() && P.c.is_zero() && P.a == P.d;
}

bool equal_exact(const ExactMatrix &A, const ExactMatrix &B) {
    const ExactMatrix x = A.reduced();
    const ExactMatrix y = B.reduced();
    return x.m == y.m && x.L == y.L && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

void ExactUnitary::validate() const {
    if (L < 0) {
        throw PreconditionViolated("negative denominator exponent");
    }
    if (z.order() != m || y.order() != m) {
        throw PreconditionViolated("entries live in the wrong ring");
    }
    const RealCycInt lhs = norm_sq(z) + norm_sq(y);
    if (!(lhs.embed() == nu_sq_pow(m, L))) {
        throw PreconditionViolated("|z|^2 + |y|^2 != nu^{2L}");
    }
}

ExactMatrix ExactUnitary::matrix() const {
    const CycInt w = CycInt::zeta_pow(m, ell);
    return {m, z, y * w, -conj(y), conj(z) * w, L};
}

ExactUnitary ExactUnitary::from_matrix(const ExactMatrix &M) {
    const CycInt det = M.a * M.d - M.b * M.c;
    const CycInt scale = nu_sq_pow(M.m, M.L);
    for (int l = 0; l < as_int(M.m); ++l) {
        if (det == scale * CycInt::zeta_pow(M.m, l)) {
            ExactUnitary u{M.m, M.a, M.b * CycInt::zeta_pow(M.m, -l), M.L, l};
            if (!(M.c == -conj(u.y)) || !(M.d == conj(u.z) * CycInt::zeta_pow(M.m, l))) {
                throw PreconditionViolated("matrix is not unitary");
            }
            return u;
        }
    }
    throw PreconditionViolated("determinant is not nu^{2L} times a root of unity");
}

// ---------------------------------------------------------------- tokens

namespace {

bool parse_arg(const std::string &tok, const std::string &name, long &arg) {
    static const std::regex re(R"(^([A-Za-z]+)\((-?[0-9]+)\)$)");
    std::smatch mt;
    if (!std::regex_match(tok, mt, re) || mt[1].str() != name) {
        return false;
    }
    arg = std::stol(mt[2].str());
    return true;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

ExactMatrix diag(RingOrder m, const CycInt &p, const CycInt &q, long L = 0) {
    return {m, p, CycInt(m), CycInt(m), q, L};
}

ExactMatrix pauli(RingOrder m, char p) {
    const CycInt one = CycInt::from_int(m, 1);
    const CycInt i = CycInt::imag_unit(m);
    switch (p) {
    case 'X':
        return {m, CycInt(m), one, one, CycInt(m), 0};
    case 'Y':
        return {m, CycInt(m), -i, i, CycInt(m), 0};
    default:
        return diag(m, one, -one);
    }
}

ExactMatrix hadamard(RingOrder m) {
    const CycInt one = CycInt::from_int(m, 1);
    return {m, one, one, one, -one, 1};
}

} // namespace

ExactMatrix gate_matrix(Basis b, const std::string &tok) {
    const RingOrder m = basis_ring(b);
    const CycInt one = CycInt::from_int(m, 1);
    if (tok == "X" || tok == "Y" || tok == "Z") {
        return pauli(m, tok[0]);
    }
    long arg = 0;
    switch (b) {
    case Basis::T:
        if (tok == "H") {
            return hadamard(m);
        }
        if (tok == "T") {
            return diag(m, one, CycInt::zeta_pow(m, 1));
        }
        if (tok == "Tdg") {
            return diag(m, one, CycInt::zeta_pow(m, -1));
        }
        if (tok == "S") {
            return diag(m, one, CycInt::zeta_pow(m, 2));
        }
        if (tok == "Sdg") {
            return diag(m, one, CycInt::zeta_pow(m, -2));
        }
        if (parse_arg(tok, "Wph", arg)) {
            const CycInt w = CycInt::zeta_pow(m, arg);
            return diag(m, w, w);
        }
        break;
    case Basis::PI12:
        if (tok == "H") {
            return hadamard(m);
        }
        if (parse_arg(tok, "K", arg)) {
            if (arg < -5 || arg > 6) {
                throw InvalidInput("K exponent out of range -5..6: " + tok);
            }
            return diag(m, one, CycInt::zeta_pow(m, arg));
        }
        if (parse_arg(tok, "Wph", arg)) {
            const long j = mod(arg, 24);
            if (j % 2 == 0) {
                const CycInt w = CycInt::zeta_pow(m, j / 2);
                return diag(m, w, w);
            }
            // e^{i pi / 4} = (1 + i)/sqrt2
            const CycInt w = CycInt::zeta_pow(m, (j - 3) / 2) * CycInt(m, {1, 0, 0, 1});
            return diag(m, w, w, 1);
        }
        break;
    case Basis::V: {
        const CycInt i = CycInt::imag_unit(m);
        const CycInt two_i = i * mpz_class(2);
        const CycInt two = CycInt::from_int(m, 2);
        if (tok == "H") {
            throw InvalidInput("H is not exactly representable over Z[i, 1/sqrt5]");
        }
        if (tok == "S") {
            return diag(m, one, i);
        }
        if (tok == "VX" || tok == "VXdg") {
            const CycInt off = tok == "VX" ? two_i : -two_i;
            return {m, one, off, off, one, 1};
        }
        if (tok == "VY" || tok == "VYdg") {
            const CycInt s = tok == "VY" ? two : -two;
            return {m, one, s, -s, one, 1};
        }
        if (tok == "VZ") {
            return diag(m, one + two_i, one - two_i, 1);
        }
        if (tok == "VZdg") {
            return diag(m, one - two_i, one + two_i, 1);
        }
        if (parse_arg(tok, "Gph", arg)) {
            const CycInt w = CycInt::zeta_pow(m, arg);
            return diag(m, w, w);
        }
        break;
    }
    }
    throw InvalidInput("unknown gate token '" + tok + "' for basis " + basis_name(b));
}

ExactMatrix eval_circuit(const Circuit &c) {
    const RingOrder m = basis_ring(c.basis);
    ExactMatrix M = ExactMatrix::identity(m);
    for (const auto &tok : c.gates) {
        M = (gate_matrix(c.basis, tok) * M).reduced();
    }
    return M;
}

long Circuit::cost() const {
    long n = 0;
    for (const auto &tok : gates) {
        long arg = 0;
        switch (basis) {
        case Basis::T:
            n += (tok == "T" || tok == "Tdg") ? 1 : 0;
            break;
        case Basis::PI12:
            n += (parse_arg(tok, "K", arg) && mod(arg, 3) != 0) ? 1 : 0;
            break;
        case Basis::V:
            n += tok.size() >= 2 && tok[0] == 'V' ? 1 : 0;
            break;
        }
    }
    return n;
}

std::string Circuit::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        os << (i ? " " : "") << gates[i];
    }
    return os.str();
}

Circuit Circuit::parse(Basis b, const std::string &text) {
    Circuit c{b, {}};
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (!(b == Basis::V && tok == "H")) {
            gate_matrix(b, tok); // validates the token
        }
        c.gates.push_back(tok);
    }
    return c;
}

void Circuit::append(const Circuit &o) {
    if (o.basis != basis) {
        throw PreconditionViolated("appending circuits of different bases");
    }
    gates.insert(gates.end(), o.gates.begin(), o.gates.end());
}

std::vector<std::string> phase_tokens(Basis b, long k) {
    switch (b) {
    case Basis::T:
        switch (mod(k, 8)) {
        case 0:
            return {};
        case 1:
            return {"T"};
        case 2:
            return {"S"};
        case 3:
            return {"S", "T"};
        case 4:
            return {"Z"};
        case 5:
            return {"Z", "T"};
        case 6:
            return {"Sdg"};
        default:
            return {"Tdg"};
        }
    case Basis::PI12: {
        long j = mod(k, 12);
        if (j == 0) {
            return {};
        }
        if (j > 6) {
            j -= 12;
        }
        return {"K(" + std::to_string(j) + ")"};
    }
    case Basis::V:
        switch (mod(k, 4)) {
        case 0:
            return {};
        case 1:
            return {"S"};
        case 2:
            return {"Z"};
        default:
            return {"Z", "S"};
        }
    }
    return {};
}

Circuit synth_exact(const ExactUnitary &u) {
    switch (u.m) {
    case RingOrder::M8:
        return synth_t(u);
    case RingOrder::M12:
        return synth_pi12(u);
    case RingOrder::M4:
        return synth_v(u);
    }
    throw PreconditionViolated("unsupported ring");
}

} // namespace pqf

namespace pqf {

std::vector<std::string> global_phase_tokens(Basis b, long k) {
    switch (b) {
    case Basis::T: {
        const long j = ((k % 8) + 8) % 8;
        return j == 0 ? std::vector<std::string>{} : std::vector<std::string>{"Wph(" + std::to_string(j) + ")"};
    }
    case Basis::PI12: {
        const long j = ((k % 24) + 24) % 24;
        return j == 0 ? std::vector<std::string>{} : std::vector<std::string>{"Wph(" + std::to_string(j) + ")"};
    }
    case Basis::V: {
        const long j = ((k % 4) + 4) % 4;
        return j == 0 ? std::vector<std::string>{} : std::vector<std::string>{"Gph(" + std::to_string(j) + ")"};
    }
    }
    return {};
}

int root_of_unity_exponent(const CycInt &x) {
    for (int p = 0; p < as_int(x.order()); ++p) {
        if (x == CycInt::zeta_pow(x.order(), p)) {
            return p;
        }
    }
    return -1;
}

Circuit monomial_circuit(Basis b, const ExactMatrix &M_in) {
    const ExactMatrix M = M_in.reduced();
    if (M.L != 0) {
        throw InternalError("terminal matrix still has a denominator");
    }
    const bool diagonal = M.b.is_zero() && M.c.is_zero();
    const bool anti = M.a.is_zero() && M.d.is_zero();
    // diag(w^p, w^q) = w^p Lambda(w^{q-p}); [[0, w^p], [w^q, 0]] = X diag(w^q, w^p)
    const int p = root_of_unity_exponent(diagonal ? M.a : M.c);
    const int q = root_of_unity_exponent(diagonal ? M.d : M.b);
    if ((!diagonal && !anti) || p < 0 || q < 0) {
        throw InternalError("terminal matrix is not a monomial unitary");
    }
    Circuit c{b, {}};
    for (auto &t : phase_tokens(b, q - p)) {
        c.gates.push_back(t);
    }
    if (anti) {
        c.gates.emplace_back("X");
    }
    // pi12 global phases count in units of e^{i pi/12} = w12^{1/2}
    for (auto &t : global_phase_tokens(b, b == Basis::PI12 ? 2L * p : p)) {
        c.gates.push_back(t);
    }
    return c;
}

} // namespace pqf
