#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "oscwell/cavity.hpp"

using namespace oscwell;
using std::numbers::pi;

TEST_CASE("wall motion examples") {
    const CavityDrive d(0.01, 7.0);
    CHECK(d.radius(0.0) == 1.0);
    CHECK(d.radius(pi / 14.0) == doctest::Approx(1.01).epsilon(1e-15));
    CHECK(d.alpha(pi / 14.0) == doctest::Approx(1.0 / 1.01).epsilon(1e-15));
    CHECK(d.wall_log_velocity(0.0) == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(std::abs(d.wall_log_velocity(pi / 14.0)) < 1e-15);
    CHECK(d.period() == doctest::Approx(2 * pi / 7.0));
}

TEST_CASE("a zero amplitude is a static wall") {
    const CavityDrive d(0.0, 3.0);
    for (double t : {0.0, 0.3, 17.0}) {
        CHECK(d.radius(t) == 1.0);
        CHECK(d.wall_log_velocity(t) == 0.0);
    }
}

TEST_CASE("invalid drives are rejected") {
    CHECK_THROWS_AS(CavityDrive(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CavityDrive(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CavityDrive(0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CavityDrive(0.1, std::nan("")), std::invalid_argument);
}

TEST_CASE("log velocity is d/dt ln R and the drive is periodic") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ueps(0.0, 0.9), unu(0.5, 50.0), ut(0.0, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        const CavityDrive d(ueps(rng), unu(rng));
        const double t = ut(rng);
        const double h = 1e-5 / d.nu();
        const double fd = (std::log(d.radius(t + h)) - std::log(d.radius(t - h))) / (2 * h);
        CHECK(d.wall_log_velocity(t) == doctest::Approx(fd).epsilon(1e-6).scale(d.nu()));
        CHECK(d.radius(t + d.period()) == doctest::Approx(d.radius(t)).epsilon(1e-12));
        CHECK(d.alpha(t) * d.radius(t) == doctest::Approx(1.0).epsilon(1e-15));
    }
}
