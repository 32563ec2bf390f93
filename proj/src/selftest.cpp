#include "pqf/selftest.hpp"

#include "pqf/config.hpp"
#include "pqf/exact.hpp"
#include "pqf/grid.hpp"
#include "pqf/normeq.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace pqf {

bool brute_force_norm_eq8(long a, long b) {
    // |y|^2 + |y^bullet|^2 = 2 (c0^2 + c1^2 + c2^2 + c3^2), so sum c_j^2 = a
    const auto r = static_cast<long>(std::sqrt(static_cast<double>(std::max(a, 0L)))) + 1;
    const RealCycInt xi(RingOrder::M8, a, b);
    for (long c0 = -r; c0 <= r; ++c0) {
        for (long c1 = -r; c1 <= r; ++c1) {
            for (long c2 = -r; c2 <= r; ++c2) {
                for (long c3 = -r; c3 <= r; ++c3) {
                    if (c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3 != a) {
                        continue;
                    }
                    if (norm_sq(CycInt(RingOrder::M8, {c0, c1, c2, c3})) == xi) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

bool brute_force_two_squares(long n) {
    for (long x = 0; x * x <= n; ++x) {
        const long rest = n - x * x;
        const auto y = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
        for (long t = std::max(0L, y - 1); t <= y + 1; ++t) {
            if (t * t == rest) {
                return true;
            }
        }
    }
    return false;
}

namespace {

SelftestResult suite(const std::string &name, const std::function<std::string()> &body) {
    SelftestResult r{name, false, ""};
    try {
        r.detail = body();
        r.ok = r.detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception &e) {
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

std::string orbit_table() {
    std::array<int, 4> sizes{};
    for (int bits = 0; bits < 16; ++bits) {
        const CycInt z(RingOrder::M12, {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1});
        sizes[static_cast<std::size_t>(parity_mu(z).orbit)]++;
    }
    std::ostringstream os;
    os << "orbit sizes " << sizes[0] << "," << sizes[1] << "," << sizes[2] << "," << sizes[3];
    if (!(sizes[0] == 1 && sizes[1] == 6 && sizes[2] == 6 && sizes[3] == 3)) {
        return "FAIL " + os.str();
    }
    return os.str();
}

std::string norm_equations() {
    long checked = 0, disagree = 0;
    for (long a = -20; a <= 20; ++a) {
        for (long b = -20; b <= 20; ++b) {
            const RealCycInt xi(RingOrder::M8, a, b);
            if (xi.sign() < 0 || xi.bullet().sign() < 0 || xi.is_zero()) {
                continue;
            }
            const NormEqOutcome out = solve_norm_eq(xi);
            if (out.status == NormEqStatus::NotEasy) {
                continue;
            }
            ++checked;
            const bool exists = brute_force_norm_eq8(a, b);
            const bool solved = out.status == NormEqStatus::Solved && out.y && norm_sq(*out.y) == xi;
            if (solved != exists) {
                ++disagree;
            }
        }
    }
    std::ostringstream os;
    os << checked << " equations, " << disagree << " disagreements";
    return disagree == 0 ? os.str() : "FAIL " + os.str();
}

std::string two_squares() {
    long checked = 0, disagree = 0;
    for (long n = 1; n <= 2000; ++n) {
        const NormEqOutcome out = solve_two_squares(n);
        if (out.status == NormEqStatus::NotEasy) {
            continue;
        }
        ++checked;
        const bool solved = out.status == NormEqStatus::Solved && out.y &&
                            norm_sq(*out.y) == RealCycInt(RingOrder::M4, n);
        if (solved != brute_force_two_squares(n)) {
            ++disagree;
        }
    }
    std::ostringstream os;
    os << checked << " values, " << disagree << " disagreements";
    return disagree == 0 ? os.str() : "FAIL " + os.str();
}

std::string grid_boxes() {
    SplitMix64 g(11);
    long bad = 0;
    const long n = 400;
    for (long i = 0; i < n; ++i) {
        const int d = i % 2 == 0 ? 2 : 3;
        const Real v = unit_value(d);
        const Real x0(g.uniform() * 200.0 - 100.0);
        const Real y0(g.uniform() * 200.0 - 100.0);
        const Real w(1.0 + g.uniform() * 10.0);
        const Real h = v * v / w * Real(1.0 + g.uniform());
        const RealCycInt p = grid_point(x0, x0 + w, y0, y0 + h, d);
        const Real pv = p.approx();
        const Real pb = p.bullet().approx();
        if (!(x0 <= pv && pv <= x0 + w && y0 <= pb && pb <= y0 + h)) {
            ++bad;
        }
    }
    std::ostringstream os;
    os << n << " boxes, " << bad << " misses";
    return bad == 0 ? os.str() : "FAIL " + os.str();
}

std::string round_trips() {
    SplitMix64 g(5);
    long bad = 0, total = 0;
    for (Basis b : {Basis::T, Basis::PI12, Basis::V}) {
        std::vector<std::string> alpha;
        if (b == Basis::T) {
            alpha = {"H", "T", "Tdg", "S", "X"};
        } else if (b == Basis::PI12) {
            alpha = {"H", "K(1)", "K(-1)", "K(2)", "X"};
        } else {
            alpha = {"VX", "VYdg", "VZ", "S", "X"};
        }
        for (int it = 0; it < 100; ++it) {
            Circuit w{b, {}};
            for (int i = 0; i < 30; ++i) {
                w.gates.push_back(alpha[g.next() % alpha.size()]);
            }
            const ExactMatrix M = eval_circuit(w);
            const Circuit c = synth_exact(ExactUnitary::from_matrix(M));
            ++total;
            if (!equal_up_to_phase(eval_circuit(c), M)) {
                ++bad;
            }
        }
    }
    std::ostringstream os;
    os << total << " words, " << bad << " mismatches";
    return bad == 0 ? os.str() : "FAIL " + os.str();
}

std::string example_fixture() {
    const RealCycInt xi(RingOrder::M8, 1270080, 211680);
    // sqrt2^11 * 3^3 * 5 * 7^2 * (1 + 3 sqrt2)
    RealCycInt expect(RingOrder::M8, 3 * 3 * 3 * 5 * 7 * 7);
    for (int i = 0; i < 11; ++i) {
        expect = expect * RealCycInt(RingOrder::M8, 0, 1);
    }
    expect = expect * RealCycInt(RingOrder::M8, 1, 3);
    if (!(expect == xi)) {
        return "FAIL fixture product mismatch";
    }
    const NormEqOutcome out = solve_norm_eq(xi);
    if (out.status != NormEqStatus::Solved || !out.y || !(norm_sq(*out.y) == xi)) {
        return "FAIL solver did not return a verified y";
    }
    return "factorization and solution verified";
}

} // namespace

std::vector<SelftestResult> run_selftest() {
    return {suite("orbit-table", orbit_table),         suite("norm-equations", norm_equations),
            suite("two-squares", two_squares),         suite("grid-problems", grid_boxes),
            suite("synthesis-round-trip", round_trips), suite("example-fixture", example_fixture)};
}

} // namespace pqf
