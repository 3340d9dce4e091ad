#include "doctest.h"
#include "support.hpp"

using namespace bvr;
using bvr::testing::oracle_isa_density;

TEST_CASE("isa density anchors")
{
    CHECK(isa_density(0.0) == doctest::Approx(1.225).epsilon(1e-6));
    CHECK(std::abs(isa_density(11000.0) - 0.364) < 1e-3);
    CHECK(std::abs(isa_density(11000.0) - oracle_isa_density(11000.0)) < 1e-9);
    CHECK(isa_density(5000.0) < isa_density(0.0));
    CHECK(isa_density(5000.0) > isa_density(11000.0));
}

TEST_CASE("isa density matches the layered barometric oracle and is continuous")
{
    for (double h = 0.0; h <= 25000.0; h += 250.0) {
        CAPTURE(h);
        CHECK(isa_density(h) == doctest::Approx(oracle_isa_density(h)).epsilon(1e-10));
    }
    for (double h : {11000.0, 20000.0}) {
        CHECK(isa_density(h - 1e-6) == doctest::Approx(isa_density(h + 1e-6)).epsilon(1e-9));
    }
    double prev = isa_density(0.0);
    for (double h = 100.0; h <= 25000.0; h += 100.0) {
        CHECK(isa_density(h) < prev);
        prev = isa_density(h);
    }
}

TEST_CASE("isa clamps outside the table and flags it")
{
    CHECK_FALSE(isa_sample(5000.0).clamped);
    const AtmosphereSample low = isa_sample(-300.0);
    CHECK(low.clamped);
    CHECK(low.density == isa_density(0.0));
    const AtmosphereSample high = isa_sample(30000.0);
    CHECK(high.clamped);
    CHECK(high.density == isa_sample(25000.0).density);
}

TEST_CASE("mach")
{
    CHECK(mach(340.29, 0.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(mach(0.0, 7000.0) == 0.0);
    const double a10 = std::sqrt(1.4 * 287.05287 * (288.15 - 0.0065 * 10000.0));
    CHECK(std::abs(mach(1360.0, 10000.0) - 1360.0 / a10) < 1e-9);
    CHECK(std::abs(mach(1360.0, 10000.0) - 4.54) < 1e-2);
    CHECK(speed_of_sound(11000.0) == doctest::Approx(speed_of_sound(15000.0)));
}
