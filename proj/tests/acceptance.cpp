// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero only when a correctness criterion fails (1, 9, 10, 11, 12).
// Criteria 2-8 compare benchmark statistics against published figures; they are
// reported but do not fail the run. PQF_ACCEPT_ANGLES overrides the angle count.

#include "pqf/bench.hpp"
#include "pqf/config.hpp"
#include "pqf/distance.hpp"
#include "pqf/errors.hpp"
#include "pqf/modifier.hpp"
#include "pqf/normeq.hpp"
#include "pqf/protocol.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using namespace pqf;

namespace {

struct Line {
    int id;
    bool pass;
    bool fatal;
    std::string text;
};

std::vector<Line> lines;

void report(int id, bool pass, bool fatal, const std::string &text) {
    lines.push_back({id, pass, fatal, text});
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return NAN;
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double> &v) {
    return v.empty() ? NAN : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------
// protocol verification, written against the raw circuits

// d(M / |col0|, Lambda(e^{i theta})) for M proportional to a unitary.
Real scaled_distance(const ExactMatrix &M, const Real &theta) {
    const CMat2 e = enclose(M);
    const Interval s = sqrt(e.a.norm_sq() + e.c.norm_sq());
    const ComplexInterval n{s, Interval(0L)};
    return trace_distance(CMat2{e.a / n, e.b / n, e.c / n, e.d / n}, lambda_phase(theta));
}

struct Check {
    bool ok = true;
    double worst = 0;
    std::string why;
};

Check check_protocol(const PqfProtocol &P) {
    Check c;
    const RingOrder m = basis_ring(P.basis);
    auto look = [&](const ExactMatrix &M, const char *what) {
        const Real d = scaled_distance(M, P.theta);
        c.worst = std::max(c.worst, d.to_double());
        if (!(d <= P.eps)) {
            c.ok = false;
            c.why = what;
        }
    };
    ExactMatrix acc = ExactMatrix::identity(m);
    for (const Round &r : P.rounds) {
        const ExactMatrix4 U = two_qubit_form(eval_circuit(r.circuit));
        look(branch_operator(U, 0) * acc, "outcome 0");
        acc = branch_operator(U, 1) * acc;
        if (r.failure_terminal) {
            look(acc, "terminal failure branch");
            return c;
        }
    }
    look(eval_circuit(P.fallback) * acc, "fallback composite");
    return c;
}

// ---------------------------------------------------------------------------
// benchmark

struct Sample {
    Basis basis;
    std::string eps;
    double log2_inv_eps = 0;
    bool ok = false;
    std::string error;
    double expected_cost = 0;
    double p = 0;
    double z_abs = 0;
    long pslq = 0;
    long candidates = 0;
    Check check;
};

const std::vector<std::string> kBenchEps = {"1e-10", "1e-12", "1e-14", "1e-15", "1e-16", "1e-18", "1e-20"};

std::vector<Sample> bench_basis(Basis b, const std::vector<Real> &angles) {
    std::vector<Sample> out;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto &e : kBenchEps) {
        for (const Real &theta : angles) {
            Sample s;
            s.basis = b;
            s.eps = e;
            s.log2_inv_eps = -std::log2(std::stod(e));
            try {
                const Real eps = parse_eps(e);
                const PqfProtocol P = build_pqf(theta, eps, 1, b);
                PrecisionScope ps(precision_for_eps(s.log2_inv_eps));
                s.check = check_protocol(P);
                s.ok = true;
                s.expected_cost = P.expected_cost.to_double();
                if (!P.rounds.empty()) {
                    const Round &r = P.rounds.front();
                    s.p = r.p_success.to_double();
                    s.z_abs = r.stats.z_abs.to_double();
                    s.pslq = r.stats.pslq_iterations;
                    s.candidates = r.stats.candidates_tried;
                }
            } catch (const std::exception &ex) {
                s.error = ex.what();
            }
            out.push_back(std::move(s));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::fprintf(stderr, "  bench %s eps %s done (%.0f s)\n", basis_name(b).c_str(), e.c_str(), secs);
    }
    return out;
}

// a x + c log_b x + d by the normal equations
std::array<double, 3> fit_law(const std::vector<double> &x, const std::vector<double> &y, double base) {
    double A[3][3] = {}, r[3] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double row[3] = {x[i], std::log(x[i]) / std::log(base), 1.0};
        for (int u = 0; u < 3; ++u) {
            r[u] += row[u] * y[i];
            for (int v = 0; v < 3; ++v) {
                A[u][v] += row[u] * row[v];
            }
        }
    }
    // Gauss-Jordan with partial pivoting
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int k = c + 1; k < 3; ++k) {
            if (std::abs(A[k][c]) > std::abs(A[piv][c])) {
                piv = k;
            }
        }
        std::swap(A[c], A[piv]);
        std::swap(r[c], r[piv]);
        for (int k = 0; k < 3; ++k) {
            if (k != c) {
                const double f = A[k][c] / A[c][c];
                for (int v = 0; v < 3; ++v) {
                    A[k][v] -= f * A[c][v];
                }
                r[k] -= f * r[c];
            }
        }
    }
    return {r[0] / A[0][0], r[1] / A[1][1], r[2] / A[2][2]};
}

struct Law {
    double a, c, d, base;
    double at(double x) const { return a * x + c * std::log(x) / std::log(base) + d; }
};

void cost_law(int id, Basis b, const std::vector<Sample> &rows, const Law &ref, double a_tol) {
    std::map<double, std::vector<double>> by_eps;
    for (const auto &s : rows) {
        if (s.ok) {
            by_eps[s.log2_inv_eps].push_back(s.expected_cost);
        }
    }
    std::vector<double> xs, ys;
    double worst = 0;
    std::ostringstream per;
    for (const auto &[l2, v] : by_eps) {
        const double x = l2 / std::log2(ref.base);
        const double m = mean(v);
        xs.push_back(x);
        ys.push_back(m);
        worst = std::max(worst, std::abs(m - ref.at(x)));
        per << fmt(" %.1f", m) << "/" << fmt("%.1f", ref.at(x));
    }
    const auto f = fit_law(xs, ys, ref.base);
    const bool within = worst <= 10.0 && by_eps.size() == kBenchEps.size();
    const bool coef = std::abs(f[0] - ref.a) <= a_tol;
    std::ostringstream os;
    os << basis_name(b) << " mean vs fit per eps [" << per.str() << " ], max gap " << fmt("%.2f", worst)
       << " (<= 10: " << (within ? "yes" : "no") << "); fitted a = " << fmt("%.3f", f[0]) << ", c = "
       << fmt("%.2f", f[1]) << ", d = " << fmt("%.2f", f[2]) << " (a within " << ref.a << " +- " << a_tol << ": "
       << (coef ? "yes" : "no") << ")";
    report(id, within && coef, false, os.str());
}

// ---------------------------------------------------------------------------
// cost model oracle: the chain's outcome distribution, enumerated exactly

struct Outcome {
    mpq_class prob, cost;
};

std::vector<Outcome> chain_outcomes(const std::vector<mpq_class> &p, const std::vector<mpq_class> &c,
                                    const mpq_class &cf) {
    std::vector<Outcome> out;
    mpq_class reach = 1, spent = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        spent += c[j];
        out.push_back({reach * p[j], spent});
        reach *= 1 - p[j];
    }
    out.push_back({reach, spent + cf});
    return out;
}

void moments(const std::vector<Outcome> &o, mpq_class &m1, mpq_class &var, mpq_class &mu4) {
    m1 = 0;
    for (const auto &x : o) {
        m1 += x.prob * x.cost;
    }
    var = 0;
    mu4 = 0;
    for (const auto &x : o) {
        const mpq_class d = x.cost - m1;
        var += x.prob * d * d;
        mu4 += x.prob * d * d * d * d;
    }
}

double rel_gap(const Real &a, const mpq_class &b) {
    const PrecisionScope ps(256);
    const Real bb(b);
    const Real diff = abs(a - bb);
    const Real scale = max(abs(bb), Real(1L));
    return (diff / scale).to_double();
}

void criterion_cost_model() {
    const PrecisionScope ps(256);
    long cases = 0, bad_exact = 0, bad_rem = 0;
    for (long k = 1; k <= 5; ++k) {
        for (const mpq_class p : {mpq_class(7, 10), mpq_class(9, 10), mpq_class(19, 20), mpq_class(49, 50),
                                  mpq_class(99, 100)}) {
            for (const long cp : {10L, 37L, 120L}) {
                for (const long cf : {40L, 150L, 400L}) {
                    ++cases;
                    const mpq_class q = 1 - p;
                    std::vector<mpq_class> pv(static_cast<std::size_t>(k), p), cv(static_cast<std::size_t>(k), cp);
                    mpq_class m1, var, mu4;
                    moments(chain_outcomes(pv, cv, cf), m1, var, mu4);
                    // truncated-geometric closed form of the mean
                    mpq_class qk = 1;
                    for (long j = 0; j < k; ++j) {
                        qk *= q;
                    }
                    const mpq_class closed = mpq_class(cp) * (1 - qk) / p + qk * cf;
                    if (closed != m1) {
                        ++bad_exact;
                    }
                    std::vector<Real> rc(static_cast<std::size_t>(k), Real(cp)), rp(static_cast<std::size_t>(k), Real(p));
                    const CostMoments got = cost_moments(rc, rp, std::vector<bool>(static_cast<std::size_t>(k), false),
                                                         Real(cf));
                    if (rel_gap(got.mean, m1) > 1e-50 || rel_gap(got.variance, var) > 1e-50) {
                        ++bad_exact;
                    }
                    // asymptotic forms C/p and C^2 q / p^2 up to explicit O(q^k) remainders
                    const mpq_class scale = cf + mpq_class(k * cp) / p;
                    const mpq_class r1 = abs(m1 - mpq_class(cp) / p);
                    const mpq_class r2 = abs(var - mpq_class(cp * cp) * q / (p * p));
                    if (r1 > qk * scale || r2 > qk * scale * scale) {
                        ++bad_rem;
                    }
                }
            }
        }
    }

    // Monte-Carlo on compiled protocols against the exact chain distribution
    std::ostringstream mc;
    bool mc_ok = true;
    const long trials = 100000;
    SplitMix64 g(77);
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        const PqfProtocol P = build_pqf(Real(0.1 + 1.3 * g.uniform()), Real(1e-10), 2, b);
        std::vector<mpq_class> pv, cv;
        for (const auto &r : P.rounds) {
            pv.emplace_back(r.p_success.to_double());
            cv.emplace_back(r.cost);
        }
        const bool terminal = !P.rounds.empty() && P.rounds.back().failure_terminal;
        mpq_class m1, var, mu4;
        moments(chain_outcomes(pv, cv, terminal ? mpq_class(0) : mpq_class(P.fallback.cost())), m1, var, mu4);
        const SimReport s = simulate(P, trials, 1000 + static_cast<std::uint64_t>(b));
        const double sd_mean = std::sqrt(var.get_d() / trials);
        const double sd_var = std::sqrt(std::max(0.0, (mu4.get_d() - var.get_d() * var.get_d()) / trials));
        const double zm = sd_mean > 0 ? std::abs(s.mean_cost.to_double() - m1.get_d()) / sd_mean : 0;
        const double zv = sd_var > 0 ? std::abs(s.cost_variance.to_double() - var.get_d()) / sd_var : 0;
        const bool ok = zm <= 3 && zv <= 3 && s.max_distance <= P.eps;
        mc_ok = mc_ok && ok;
        mc << " " << basis_name(b) << fmt(" mean %.3f", s.mean_cost.to_double()) << fmt("/%.3f", m1.get_d())
           << fmt(" (%.2f sd)", zm) << fmt(" var %.2f", s.cost_variance.to_double()) << fmt("/%.2f", var.get_d())
           << fmt(" (%.2f sd)", zv) << ";";
    }
    std::ostringstream os;
    os << cases << " synthetic chains (k <= 5): " << bad_exact << " exact mismatches, " << bad_rem
       << " remainder violations; Monte-Carlo " << trials << " trials:" << mc.str();
    report(10, bad_exact == 0 && bad_rem == 0 && mc_ok, true, os.str());
}

// ---------------------------------------------------------------------------
// exact synthesis bounds

std::vector<std::string> alphabet(Basis b) {
    if (b == Basis::T) return {"T", "Tdg", "S", "X", "Z"};
    if (b == Basis::PI12) return {"K(1)", "K(-1)", "K(2)", "K(5)", "K(3)", "X"};
    return {"VX", "VXdg", "VY", "VYdg", "VZ", "VZdg", "S", "X"};
}

void criterion_exact_bounds() {
    SplitMix64 g(90);
    std::ostringstream os;
    long total_bad = 0;
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        const auto a = alphabet(b);
        long bad = 0, errors = 0, max_l = 0;
        for (int i = 0; i < 1000; ++i) {
            Circuit w{b, {}};
            const int len = 1 + static_cast<int>(g.next() % 80);
            for (int j = 0; j < len; ++j) {
                // V words mix freely; T and pi/12 words use H-separated non-Clifford syllables
                // with occasional Cliffords so that L grows with the length
                if (b == Basis::V) {
                    w.gates.push_back(a[g.next() % a.size()]);
                    continue;
                }
                w.gates.emplace_back("H");
                w.gates.push_back(a[g.next() % 2]);
                if (g.next() % 3 == 0) {
                    w.gates.push_back(a[2 + g.next() % (a.size() - 2)]);
                }
            }
            const ExactMatrix M = eval_circuit(w);
            try {
                const ExactUnitary u = ExactUnitary::from_matrix(M);
                const Circuit c = synth_exact(u);
                const long L = M.reduced().L;
                max_l = std::max(max_l, L);
                const long t = c.cost();
                bool ok = equal_up_to_phase(eval_circuit(c), M);
                if (b == Basis::V) {
                    ok = ok && t <= L;
                } else if (b == Basis::PI12) {
                    ok = ok && t <= L + 2;
                } else if (u.ell % 2 == 0) {
                    ok = ok && (t == 2 * L || t == 2 * L - 2);
                } else {
                    // odd determinant phase: one T beyond a form with even phase
                    ok = ok && (t - 1 == 2 * L || t - 1 == 2 * L - 2 || t - 1 == 2 * L - 4);
                }
                bad += ok ? 0 : 1;
            } catch (const std::exception &) {
                ++errors;
            }
        }
        total_bad += bad + errors;
        os << " " << basis_name(b) << ": " << bad << " violations, " << errors << " asserts (max L " << max_l << ");";
    }
    report(9, total_bad == 0, true, "1000 fuzzed unitaries per basis;" + os.str());
}

// ---------------------------------------------------------------------------
// norm equation oracle

bool omega8_norm_exists(long a, long b) {
    // |y|^2 = (c0^2+c1^2+c2^2+c3^2) + (c0 c1 + c1 c2 + c2 c3 - c3 c0) sqrt2
    const long r = static_cast<long>(std::sqrt(static_cast<double>(a))) + 1;
    for (long c0 = -r; c0 <= r; ++c0)
        for (long c1 = -r; c1 <= r; ++c1)
            for (long c2 = -r; c2 <= r; ++c2)
                for (long c3 = -r; c3 <= r; ++c3)
                    if (c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3 == a && c0 * c1 + c1 * c2 + c2 * c3 - c3 * c0 == b)
                        return true;
    return false;
}

void criterion_norm_oracle() {
    long checked = 0, bad = 0, noteasy = 0;
    const double s2 = std::sqrt(2.0);
    for (long a = -20; a <= 20; ++a) {
        for (long b = -20; b <= 20; ++b) {
            if (a + b * s2 < 0 || a - b * s2 < 0 || (a == 0 && b == 0)) {
                continue;
            }
            const NormEqOutcome out = solve_norm_eq(RealCycInt(RingOrder::M8, a, b));
            if (out.status == NormEqStatus::NotEasy) {
                ++noteasy;
                continue;
            }
            ++checked;
            const bool solved = out.status == NormEqStatus::Solved && out.y &&
                                norm_sq(*out.y) == RealCycInt(RingOrder::M8, a, b);
            bad += solved != omega8_norm_exists(a, b) ? 1 : 0;
        }
    }
    std::vector<char> sums(2001, 0);
    for (long x = 0; x * x <= 2000; ++x)
        for (long y = x; x * x + y * y <= 2000; ++y)
            sums[static_cast<std::size_t>(x * x + y * y)] = 1;
    long checked2 = 0, bad2 = 0;
    for (long n = 1; n <= 2000; ++n) {
        const NormEqOutcome out = solve_two_squares(n);
        if (out.status == NormEqStatus::NotEasy) {
            continue;
        }
        ++checked2;
        const bool solved = out.status == NormEqStatus::Solved && out.y && norm_sq(*out.y) == RealCycInt(RingOrder::M4, n);
        bad2 += solved != (sums[static_cast<std::size_t>(n)] != 0) ? 1 : 0;
    }
    std::ostringstream os;
    os << "omega8 sweep: " << checked << " decided (" << noteasy << " not easy), " << bad
       << " disagreements; two-squares n <= 2000: " << checked2 << " decided, " << bad2 << " disagreements";
    report(11, bad == 0 && bad2 == 0, true, os.str());
}

} // namespace

int main() {
    long n_angles = 100;
    if (const char *v = std::getenv("PQF_ACCEPT_ANGLES")) {
        n_angles = std::max(1L, std::atol(v));
    }
    const auto start = std::chrono::steady_clock::now();

    criterion_norm_oracle();
    criterion_exact_bounds();
    criterion_cost_model();

    const std::vector<Real> angles = bench_angles(n_angles, 2024);
    std::map<Basis, std::vector<Sample>> bench;
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        bench[b] = bench_basis(b, angles);
    }

    std::ofstream csv("acceptance_bench.csv");
    csv << "basis,eps,ok,expected_cost,p_success,z_abs,pslq_iterations,candidates,max_distance,error\n";
    for (const auto &[b, rows] : bench) {
        for (const auto &s : rows) {
            csv << basis_name(b) << ',' << s.eps << ',' << s.ok << ',' << s.expected_cost << ',' << s.p << ','
                << s.z_abs << ',' << s.pslq << ',' << s.candidates << ',' << s.check.worst << ',' << s.error << '\n';
        }
    }

    // 1: every protocol at 1e-10, 1e-15, 1e-20 verifies
    {
        long total = 0, failed = 0;
        double worst_ratio = 0;
        std::string first;
        for (const auto &[b, rows] : bench) {
            for (const auto &s : rows) {
                if (s.eps != "1e-10" && s.eps != "1e-15" && s.eps != "1e-20") {
                    continue;
                }
                ++total;
                if (!s.ok || !s.check.ok) {
                    ++failed;
                    if (first.empty()) {
                        first = basis_name(b) + " eps " + s.eps + ": " + (s.ok ? s.check.why : s.error);
                    }
                } else {
                    worst_ratio = std::max(worst_ratio, s.check.worst / std::stod(s.eps));
                }
            }
        }
        std::ostringstream os;
        os << total << " protocols, " << failed << " failed; worst distance / eps = " << fmt("%.3f", worst_ratio);
        if (!first.empty()) {
            os << "; first failure: " << first;
        }
        report(1, failed == 0 && total > 0, true, os.str());
    }

    cost_law(2, Basis::T, bench[Basis::T], {1.0, 4.0, 1.187, 2.0}, 0.1);
    cost_law(3, Basis::PI12, bench[Basis::PI12], {0.5, 2.0, 3.48, 2.0}, 0.05);
    cost_law(4, Basis::V, bench[Basis::V], {1.0, 0.95, 7.26, 5.0}, 0.1);

    // 5: success probabilities at eps <= 1e-15
    {
        std::vector<double> ps;
        std::ostringstream per;
        for (const auto &[b, rows] : bench) {
            std::vector<double> mine;
            for (const auto &s : rows) {
                if (s.ok && s.log2_inv_eps >= 49.8 && s.p > 0) {
                    ps.push_back(s.p);
                    mine.push_back(s.p);
                }
            }
            per << " " << basis_name(b) << fmt(" %.4f", median(mine));
        }
        const double med = median(ps);
        const double frac = ps.empty() ? 0
                                       : static_cast<double>(std::count_if(ps.begin(), ps.end(),
                                                                           [](double p) { return p >= 0.97; })) /
                                             static_cast<double>(ps.size());
        std::ostringstream os;
        os << ps.size() << " rounds: median p = " << fmt("%.4f", med) << " (>= 0.985), share >= 0.97 = "
           << fmt("%.3f", frac) << " (>= 0.9); per-basis medians" << per.str();
        report(5, med >= 0.985 && frac >= 0.9, false, os.str());
    }

    // 6: stage-1 size law for m = 8
    {
        std::vector<double> k;
        for (const auto &s : bench[Basis::T]) {
            if (s.ok && s.z_abs > 0) {
                k.push_back(s.z_abs * std::pow(2.0, -s.log2_inv_eps / 4));
            }
        }
        const double med = median(k);
        report(6, med >= 2.0 && med <= 4.5, false,
               "median |z| eps^(1/4) = " + fmt("%.3f", med) + " over " + std::to_string(k.size()) +
                   " m=8 rounds (in [2.0, 4.5])");
    }

    // 7: PSLQ iterations
    {
        bool ok = true;
        std::ostringstream os;
        for (Basis b : {Basis::T, Basis::PI12}) {
            os << " " << basis_name(b) << ":";
            std::map<double, std::vector<double>> it;
            for (const auto &s : bench[b]) {
                if (s.ok && s.pslq > 0) {
                    it[s.log2_inv_eps].push_back(static_cast<double>(s.pslq));
                }
            }
            for (const auto &[l, v] : it) {
                const double m = mean(v);
                ok = ok && m <= 2 * l;
                os << fmt(" %.1f", m) << fmt("/%.0f", 2 * l);
            }
        }
        report(7, ok, false, "mean iterations / bound 2 log2(1/eps):" + os.str());
    }

    // 8: modifier candidates
    {
        bool ok = true;
        std::ostringstream os;
        for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
            os << " " << basis_name(b) << ":";
            std::map<double, std::vector<double>> cnt;
            for (const auto &s : bench[b]) {
                if (s.ok && s.candidates > 0) {
                    cnt[s.log2_inv_eps].push_back(static_cast<double>(s.candidates));
                }
            }
            for (const auto &[l, v] : cnt) {
                const double m = mean(v);
                const double bound = b == Basis::V ? 2 * (1.2 + 0.36 * l / std::log2(5.0)) : 10.0;
                ok = ok && m <= bound;
                os << fmt(" %.2f", m) << fmt("/%.2f", bound);
            }
        }
        report(8, ok, false, "mean candidates / bound:" + os.str());
    }

    // 12: sanity floor on T-counts
    {
        long below = 0, n = 0;
        double slack = 1e9;
        for (const auto &s : bench[Basis::T]) {
            if (!s.ok) {
                continue;
            }
            ++n;
            const double floor = s.log2_inv_eps - 10;
            slack = std::min(slack, s.expected_cost - floor);
            below += s.expected_cost < floor ? 1 : 0;
        }
        report(12, below == 0 && n > 0, true,
               std::to_string(n) + " T-basis protocols, " + std::to_string(below) +
                   " below log2(1/eps) - 10; smallest margin " + fmt("%.2f", slack));
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int passed = 0, fatal = 0;
    for (const auto &l : lines) {
        passed += l.pass ? 1 : 0;
        fatal += (!l.pass && l.fatal) ? 1 : 0;
    }
    std::printf("%d/%zu criteria passed in %.0f s (%ld angles)\n", passed, lines.size(), secs, n_angles);
    return fatal == 0 ? 0 : 1;
}
