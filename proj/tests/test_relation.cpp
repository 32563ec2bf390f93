#include "pqf/config.hpp"
#include "pqf/grid.hpp"
#include "pqf/relation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pqf;

namespace {

// |z^*/z - e^{i theta}| = 2 |Im(z e^{i theta/2})| / |z|, evaluated with MPFR directly.
double phase_gap(const CycInt &z, const Real &theta) {
    const double t = 2.0 * M_PI / as_int(z.order());
    Real re(0L), im(0L);
    for (int j = 0; j < z.dim(); ++j) {
        const Real c(z[j]);
        re += c * cos(Real(t * j));
        im += c * sin(Real(t * j));
    }
    const Real h = theta / Real(2L);
    const Real proj = re * sin(h) + im * cos(h);
    return (Real(2L) * abs(proj) / hypot(re, im)).to_double();
}

} // namespace

TEST(Pslq, FindsPlantedRelation) {
    const PrecisionScope ps(256);
    const Real s2 = sqrt(Real(2L)), s3 = sqrt(Real(3L));
    // 3 * 1 + 5 * sqrt2 - 7 * sqrt3 - x = 0 with x defined accordingly
    const Real x = Real(3L) + Real(5L) * s2 - Real(7L) * s3;
    const std::vector<Real> xs{Real(1L), s2, s3, x};
    auto small = [&](const std::vector<mpz_class> &a) {
        Real dot(0L);
        for (std::size_t j = 0; j < a.size(); ++j) {
            dot += Real(a[j]) * xs[j];
        }
        return abs(dot) < Real(1e-60);
    };
    const PslqResult r = pslq_find(xs, small, 1000);
    ASSERT_EQ(r.a.size(), 4u);
    const mpz_class g = r.a[3];
    ASSERT_NE(g, 0);
    EXPECT_EQ(r.a[0] * -1, 3 * g);
    EXPECT_EQ(r.a[1] * -1, 5 * g);
    EXPECT_EQ(r.a[2], 7 * g);
}

TEST(Relation, PhaseApproxMeetsTarget) {
    SplitMix64 g(7);
    for (RingOrder m : {RingOrder::M8, RingOrder::M12}) {
        for (double e : {1e-6, 1e-12}) {
            for (int i = 0; i < 10; ++i) {
                const PrecisionScope ps(precision_for_eps(std::log2(1 / e)));
                const Real theta((g.uniform() - 0.5) * 2 * M_PI);
                const PhaseApprox a = approx_phase({theta, Real(e)}, m);
                EXPECT_LT(phase_gap(a.z, theta), e);
                EXPECT_LT(a.achieved_error.to_double(), e);
                EXPECT_TRUE(phase_error_below(a.z, theta, Real(e)));
            }
        }
    }
}

TEST(Relation, ContinuedFractionApprox) {
    SplitMix64 g(8);
    for (int i = 0; i < 20; ++i) {
        const PrecisionScope ps(160);
        const Real theta((g.uniform() - 0.5) * 3.0);
        const PhaseApprox a = cf_phase({theta, Real(1e-9)});
        EXPECT_EQ(a.z.order(), RingOrder::M4);
        EXPECT_LT(phase_gap(a.z, theta), 1e-9);
    }
}

TEST(Relation, RescaleFloorReachesMinimumSize) {
    const PrecisionScope ps(128);
    const CycInt z(RingOrder::M8, {1, 1, 0, 0});
    const Real eps(1e-16);
    const CycInt s = rescale_floor(z, eps);
    const double target = std::pow(1e-16, -1.0 / 8);
    const double abs_s = std::sqrt(norm_sq(s).approx().to_double());
    EXPECT_GE(abs_s, target);
    // s is an integer multiple of z and the multiplier is the smallest one
    const mpz_class q = s[0] / z[0];
    EXPECT_EQ(s, z * q);
    EXPECT_LT(abs_s * (q.get_d() - 1) / q.get_d(), target);
}

TEST(Grid, PointsLieInBoxes) {
    SplitMix64 g(9);
    const PrecisionScope ps(128);
    for (int d : {2, 3}) {
        const double v = d == 2 ? 1 + std::sqrt(2.0) : 2 + std::sqrt(3.0);
        const double r = std::sqrt(static_cast<double>(d));
        for (int i = 0; i < 300; ++i) {
            const double x0 = g.uniform() * 1e6 - 5e5, y0 = g.uniform() * 1e6 - 5e5;
            const double w = std::exp(g.uniform() * 12 - 6);
            const double h = v * v / w * (1 + g.uniform());
            const RealCycInt p = grid_point(Real(x0), Real(x0 + w), Real(y0), Real(y0 + h), d);
            const double pa = p.a().get_d(), pb = p.b().get_d();
            const double tol = 1e-9 * (1 + std::abs(x0) + std::abs(y0));
            EXPECT_GE(pa + pb * r, x0 - tol);
            EXPECT_LE(pa + pb * r, x0 + w + tol);
            EXPECT_GE(pa - pb * r, y0 - tol);
            EXPECT_LE(pa - pb * r, y0 + h + tol);
        }
    }
}

TEST(Grid, ThinBoxWithUnitAreaStillSolvable) {
    const PrecisionScope ps(128);
    const double v = 1 + std::sqrt(2.0);
    const RealCycInt p = grid_point(Real(10.0), Real(10.0 + 1e-4), Real(-3.0), Real(-3.0 + 1.01 * v * v * 1e4), 2);
    const double r = std::sqrt(2.0);
    EXPECT_NEAR(p.a().get_d() + p.b().get_d() * r, 10.00005, 1e-4);
}
