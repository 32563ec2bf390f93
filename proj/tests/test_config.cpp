#include "pqf/config.hpp"
#include "pqf/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace pqf;

TEST(Angle, PiMultiples) {
    const Angle a = parse_angle("-pi/8");
    ASSERT_TRUE(a.pi_multiple.has_value());
    EXPECT_EQ(*a.pi_multiple, mpq_class(-1, 8));
    EXPECT_NEAR(a.value.to_double(), -M_PI / 8, 1e-15);
    EXPECT_EQ(*parse_angle("3*pi/4").pi_multiple, mpq_class(3, 4));
    EXPECT_EQ(*parse_angle("3pi/4").pi_multiple, mpq_class(3, 4));
    EXPECT_EQ(*parse_angle("pi").pi_multiple, mpq_class(1));
}

TEST(Angle, DecimalRadians) {
    const Angle a = parse_angle("0.25");
    EXPECT_FALSE(a.pi_multiple.has_value());
    EXPECT_NEAR(a.value.to_double(), 0.25, 1e-16);
    EXPECT_THROW(parse_angle("pie"), InvalidInput);
    EXPECT_THROW(parse_angle(""), InvalidInput);
    EXPECT_THROW(parse_angle("pi/0"), InvalidInput);
}

TEST(Eps, Range) {
    EXPECT_NEAR(parse_eps("1e-15").to_double(), 1e-15, 1e-30);
    EXPECT_THROW(parse_eps("0"), InvalidInput);
    EXPECT_THROW(parse_eps("1.5"), InvalidInput);
    EXPECT_THROW(parse_eps("-1e-3"), InvalidInput);
    EXPECT_THROW(parse_eps("abc"), InvalidInput);
}

TEST(Config, Validate) {
    Config c;
    c.eps_text = "0.1";
    c.rounds = 1;
    EXPECT_THROW(c.validate(), InvalidInput);
    c.rounds = 0;
    EXPECT_NO_THROW(c.validate());
    c.rounds = -1;
    EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Config, ExactRootPower) {
    EXPECT_EQ(exact_root_power(parse_angle("pi/4"), RingOrder::M8), 1);
    EXPECT_EQ(exact_root_power(parse_angle("pi/6"), RingOrder::M12), 1);
    EXPECT_EQ(exact_root_power(parse_angle("pi/2"), RingOrder::M4), 1);
    EXPECT_FALSE(exact_root_power(parse_angle("pi/8"), RingOrder::M8).has_value());
    EXPECT_FALSE(exact_root_power(parse_angle("0.3"), RingOrder::M8).has_value());
}

TEST(Rng, SplitMixReference) {
    // first outputs for seed 0 of the reference splitmix64
    SplitMix64 g(0);
    EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
    SplitMix64 h(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = h.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}
