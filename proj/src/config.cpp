#include "pqf/config.hpp"

#include "pqf/errors.hpp"

#include <cctype>
#include <regex>

namespace pqf {

namespace {

std::string strip(const std::string &s) {
    std::string out;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch)) == 0) {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    return out;
}

mpz_class parse_int(const std::string &s, const std::string &whole) {
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0) {
        throw InvalidInput("cannot parse angle '" + whole + "'");
    }
    return v;
}

} // namespace

Angle parse_angle(const std::string &s) {
    const std::string t = strip(s);
    if (t.empty()) {
        throw InvalidInput("empty angle");
    }
    // [sign][num[*]]pi[/den]
    static const std::regex pi_form(R"(^([+-]?)(\d*)\*?pi(?:/(\d+))?$)");
    std::smatch mt;
    if (std::regex_match(t, mt, pi_form)) {
        mpz_class num = mt[2].str().empty() ? mpz_class(1) : parse_int(mt[2].str(), s);
        const mpz_class den = mt[3].matched ? parse_int(mt[3].str(), s) : mpz_class(1);
        if (den == 0) {
            throw InvalidInput("zero denominator in angle '" + s + "'");
        }
        if (mt[1].str() == "-") {
            num = -num;
        }
        mpq_class q(num, den);
        q.canonicalize();
        Angle a;
        a.value = Real(q) * Real::pi();
        a.pi_multiple = q;
        a.text = s;
        return a;
    }
    static const std::regex decimal(R"(^[+-]?(\d+\.?\d*|\.\d+)(e[+-]?\d+)?$)");
    if (!std::regex_match(t, decimal)) {
        throw InvalidInput("cannot parse angle '" + s + "' (use radians, pi/N or a*pi/b)");
    }
    Angle a;
    a.value = Real::parse(t);
    if (a.value.is_zero()) {
        a.pi_multiple = mpq_class(0);
    }
    a.text = s;
    return a;
}

Real parse_eps(const std::string &s) {
    static const std::regex decimal(R"(^(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
    const std::string t = strip(s);
    if (!std::regex_match(t, decimal)) {
        throw InvalidInput("cannot parse eps '" + s + "'");
    }
    Real e = Real::parse(t);
    if (!(e.sign() > 0 && e < Real(1L))) {
        throw InvalidInput("eps must lie in (0, 1), got '" + s + "'");
    }
    return e;
}

void Config::validate() const {
    const Real e = eps();
    if (rounds < 0) {
        throw InvalidInput("--rounds must be >= 0");
    }
    if (rounds > 0 && e > Real(1e-2)) {
        throw InvalidInput("probabilistic rounds need eps <= 1e-2; use --rounds 0 for coarser targets");
    }
    if (precision_bits != 0 && precision_bits < 64) {
        throw InvalidInput("--precision-bits must be 0 (automatic) or >= 64");
    }
    if (candidate_budget < 1 || factor_budget < 1) {
        throw InvalidInput("budgets must be positive");
    }
    if (angles < 1) {
        throw InvalidInput("--angles must be positive");
    }
    for (const auto &x : eps_list) {
        parse_eps(x);
    }
}

std::optional<long> exact_root_power(const Angle &theta, RingOrder m) {
    if (!theta.pi_multiple) {
        return std::nullopt;
    }
    // theta = q pi = 2 pi j / m  <=>  j = q m / 2
    mpq_class j = *theta.pi_multiple * mpq_class(as_int(m), 2);
    j.canonicalize();
    if (j.get_den() != 1) {
        return std::nullopt;
    }
    return static_cast<long>(mpz_fdiv_ui(j.get_num().get_mpz_t(), static_cast<unsigned long>(as_int(m))));
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

} // namespace pqf
