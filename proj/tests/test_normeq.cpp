#include "pqf/normeq.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

using namespace pqf;

namespace {

// All values |y|^2 with coefficients of y in [-r, r].
std::set<std::pair<long, long>> reachable_norms(RingOrder m, long r) {
    std::set<std::pair<long, long>> out;
    for (long c0 = -r; c0 <= r; ++c0) {
        for (long c1 = -r; c1 <= r; ++c1) {
            for (long c2 = -r; c2 <= r; ++c2) {
                for (long c3 = -r; c3 <= r; ++c3) {
                    const RealCycInt n = norm_sq(CycInt(m, {c0, c1, c2, c3}));
                    out.emplace(n.a().get_si(), n.b().get_si());
                }
            }
        }
    }
    return out;
}

RealCycInt product(const LimitedFactorization &f) {
    RealCycInt p = f.unit * f.cofactor;
    for (const auto &pf : f.factors) {
        for (int e = 0; e < pf.exponent; ++e) {
            p = p * pf.prime;
        }
    }
    return p;
}

} // namespace

TEST(Factor, ReconstructsInput) {
    for (RingOrder m : {RingOrder::M8, RingOrder::M12}) {
        for (long a = 1; a < 300; a += 7) {
            for (long b = -5; b <= 5; ++b) {
                const RealCycInt xi(m, a, b);
                if (xi.sign() <= 0 || xi.bullet().sign() <= 0) {
                    continue;
                }
                const LimitedFactorization f = limited_factor(xi);
                EXPECT_TRUE(f.complete());
                EXPECT_EQ(product(f), xi) << xi.str();
            }
        }
    }
}

TEST(NormEq, SolutionsVerify) {
    for (RingOrder m : {RingOrder::M8, RingOrder::M12}) {
        for (long a = 1; a < 200; ++a) {
            const RealCycInt xi(m, a, a % 3);
            if (xi.sign() <= 0 || xi.bullet().sign() <= 0) {
                continue;
            }
            const NormEqOutcome out = solve_norm_eq(xi);
            if (out.status == NormEqStatus::Solved) {
                ASSERT_TRUE(out.y.has_value());
                EXPECT_EQ(norm_sq(*out.y), xi);
            }
        }
    }
}

TEST(NormEq, Pi12AgreesWithSmallSearch) {
    const auto small = reachable_norms(RingOrder::M12, 6);
    const auto large = reachable_norms(RingOrder::M12, 8);
    const double s3 = std::sqrt(3.0);
    long checked = 0;
    for (long a = 1; a <= 8; ++a) {
        for (long b = -a; b <= a; ++b) {
            if (a - std::abs(b) * s3 < 0) {
                continue;
            }
            // the box is large enough when widening it finds nothing new
            ASSERT_EQ(small.count({a, b}), large.count({a, b})) << a << " " << b;
            const NormEqOutcome out = solve_norm_eq(RealCycInt(RingOrder::M12, a, b));
            if (out.status == NormEqStatus::NotEasy) {
                continue;
            }
            ++checked;
            EXPECT_EQ(out.status == NormEqStatus::Solved, large.count({a, b}) == 1) << a << " + " << b << " sqrt3";
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(NormEq, KnownFixture) {
    // 1270080 + 211680 sqrt2 = sqrt2^11 3^3 5 7^2 (1 + 3 sqrt2)
    const RealCycInt xi(RingOrder::M8, 1270080, 211680);
    const NormEqOutcome out = solve_norm_eq(xi);
    ASSERT_EQ(out.status, NormEqStatus::Solved);
    EXPECT_EQ(norm_sq(*out.y), xi);
}

TEST(NormEq, Omega8AgreesWithSmallSearch) {
    // sum c_j^2 = a for |y|^2 = a + b sqrt2, so a box of radius 4 covers a <= 16
    const auto norms = reachable_norms(RingOrder::M8, 4);
    long checked = 0;
    for (long a = 1; a <= 16; ++a) {
        for (long b = -a; b <= a; ++b) {
            const RealCycInt xi(RingOrder::M8, a, b);
            if (xi.bullet().sign() < 0 || xi.sign() < 0) {
                continue;
            }
            const NormEqOutcome out = solve_norm_eq(xi);
            if (out.status == NormEqStatus::NotEasy) {
                continue;
            }
            ++checked;
            EXPECT_EQ(out.status == NormEqStatus::Solved, norms.count({a, b}) == 1) << a << " + " << b << " sqrt2";
        }
    }
    EXPECT_GT(checked, 50);
    EXPECT_EQ(solve_norm_eq(RealCycInt(RingOrder::M8, 7)).status, NormEqStatus::ProvablyUnsolvable);
    EXPECT_EQ(solve_norm_eq(RealCycInt(RingOrder::M8, 3)).status, NormEqStatus::Solved);
}

TEST(TwoSquares, MatchesSumOfSquaresTable) {
    std::map<long, bool> table;
    for (long x = 0; x * x <= 5000; ++x) {
        for (long y = 0; x * x + y * y <= 5000; ++y) {
            table[x * x + y * y] = true;
        }
    }
    for (long n = 1; n <= 5000; ++n) {
        const NormEqOutcome out = solve_two_squares(n);
        ASSERT_NE(out.status, NormEqStatus::NotEasy) << n;
        EXPECT_EQ(out.status == NormEqStatus::Solved, table.count(n) == 1) << n;
        if (out.y) {
            EXPECT_EQ(norm_sq(*out.y), RealCycInt(RingOrder::M4, n));
        }
    }
}

TEST(TwoSquares, LargePrime) {
    mpz_class p("1000000000000000000000000000000");
    do {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    } while (p % 4 != 1);
    const NormEqOutcome out = solve_two_squares(p);
    ASSERT_EQ(out.status, NormEqStatus::Solved);
    EXPECT_EQ(norm_sq(*out.y), RealCycInt(RingOrder::M4, p));
}
