#include "pqf/factor.hpp"

#include "pqf/errors.hpp"

#include <algorithm>
#include <map>

namespace pqf {

const std::vector<unsigned long> &small_primes(unsigned long limit) {
    static const std::vector<unsigned long> sieve = [] {
        const unsigned long n = 1000;
        std::vector<bool> composite(n, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i < n; ++i) {
            if (composite[i]) {
                continue;
            }
            out.push_back(i);
            for (unsigned long j = i * i; j < n; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    if (limit > 1000) {
        throw PreconditionViolated("small prime table only reaches 1000");
    }
    static thread_local std::map<unsigned long, std::vector<unsigned long>> cut;
    if (limit == 1000) {
        return sieve;
    }
    auto it = cut.find(limit);
    if (it == cut.end()) {
        std::vector<unsigned long> v;
        for (auto p : sieve) {
            if (p < limit) {
                v.push_back(p);
            }
        }
        it = cut.emplace(limit, std::move(v)).first;
    }
    return it->second;
}

bool is_probable_prime(const mpz_class &n) {
    if (n < 2) {
        return false;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

namespace {

// Brent's variant; returns a nontrivial factor or 0 when the budget runs out.
mpz_class brent(const mpz_class &n, long &budget) {
    if (mpz_even_p(n.get_mpz_t())) {
        return 2;
    }
    for (unsigned long c = 1; budget > 0; ++c) {
        mpz_class y = 2, x, ys, q = 1, g = 1, t;
        const long m = 128;
        long r = 1;
        auto f = [&](mpz_class &v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (long i = 0; i < r; ++i) {
                f(y);
            }
            long k = 0;
            do {
                ys = y;
                const long lim = std::min(m, r - k);
                for (long i = 0; i < lim; ++i) {
                    f(y);
                    t = abs(x - y);
                    q = (q * t) % n;
                }
                budget -= lim;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                f(ys);
                t = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
                --budget;
            } while (g == 1);
        }
        if (g != n && g != 1) {
            return g;
        }
    }
    return 0;
}

void add_factor(std::map<mpz_class, int> &acc, const mpz_class &p, int e) { acc[p] += e; }

} // namespace

IntFactorization factor_integer(const mpz_class &n_in, long rho_budget) {
    if (n_in <= 0) {
        throw PreconditionViolated("factor_integer expects a positive integer");
    }
    IntFactorization out;
    std::map<mpz_class, int> acc;
    mpz_class n = n_in;
    for (unsigned long p : small_primes()) {
        if (n == 1) {
            break;
        }
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) {
            add_factor(acc, mpz_class(p), e);
        }
    }
    long budget = rho_budget;
    std::vector<std::pair<mpz_class, int>> work;
    if (n != 1) {
        work.emplace_back(n, 1);
    }
    mpz_class leftover = 1;
    while (!work.empty()) {
        auto [c, e] = work.back();
        work.pop_back();
        if (is_probable_prime(c)) {
            add_factor(acc, c, e);
            continue;
        }
        mpz_class root;
        int k = 1;
        // perfect powers defeat rho; peel them first
        for (int j = 2; mpz_sizeinbase(c.get_mpz_t(), 2) / static_cast<unsigned>(j) >= 10; ++j) {
            if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j)) != 0) {
                k = j;
                break;
            }
        }
        if (k > 1) {
            work.emplace_back(root, e * k);
            continue;
        }
        const mpz_class d = budget > 0 ? brent(c, budget) : mpz_class(0);
        if (d == 0) {
            for (int i = 0; i < e; ++i) {
                leftover *= c;
            }
            continue;
        }
        work.emplace_back(d, e);
        work.emplace_back(c / d, e);
    }
    out.work_spent = rho_budget - std::max(budget, 0L);
    out.cofactor = leftover;
    for (auto &[p, e] : acc) {
        out.factors.emplace_back(p, e);
    }
    return out;
}

bool sqrt_mod(const mpz_class &a_in, const mpz_class &p, mpz_class &root) {
    mpz_class a = a_in % p;
    if (a < 0) {
        a += p;
    }
    if (a == 0) {
        root = 0;
        return true;
    }
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) {
        return false;
    }
    // Tonelli-Shanks
    mpz_class q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) {
        ++z;
    }
    mpz_class c, x, t, b, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) {
            b = (b * b) % p;
        }
        x = (x * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    root = x;
    return true;
}

} // namespace pqf
