#include <doctest.h>

#include <cmath>
#include <vector>

#include "fishbone/errors.hpp"
#include "fishbone/slackening.hpp"
#include "gen.hpp"

using namespace fishbone;

namespace {

std::vector<SlackeningModel> sample_models() {
    return {SlackeningModel::mmk(3, 1.0 / 3), SlackeningModel::mmk(185.1, 0.0265),
            SlackeningModel::sqrt_smooth(1, 1), SlackeningModel::sqrt_smooth(3, 0.2),
            SlackeningModel::exponential(1, 1), SlackeningModel::exponential(3, 0.5),
            SlackeningModel::piecewise({{-2, -1}, {-0.5, -1}, {0.5, 1}, {2, 4}})};
}

bool near_kink(const SlackeningModel& m, double r, double h) {
    for (double k : m.kinks())
        if (std::fabs(r - k) < 2 * h) return true;
    return false;
}

}  // namespace

TEST_CASE("mmk values and one-sided slopes") {
    const auto m = SlackeningModel::mmk(3, 1.0 / 3);
    CHECK(m.f(0) == 0.0);
    CHECK(m.f(-1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(m.f(2) == doctest::Approx(6.0));
    CHECK(m.fprime(-1.0 / 3, Side::right) == 3.0);
    CHECK(m.fprime(-1.0 / 3, Side::left) == 0.0);
    CHECK(m.fprime(-5) == 0.0);
    REQUIRE(m.kinks().size() == 1);
    CHECK(m.kinks()[0] == doctest::Approx(-1.0 / 3));
}

TEST_CASE("smooth laws at zero") {
    CHECK(SlackeningModel::sqrt_smooth(1, 1).f(0) == 0.0);
    const auto e = SlackeningModel::exponential(2.5, 0.7);
    CHECK(e.fprime(0, Side::left) == doctest::Approx(2.5));
    CHECK(e.fprime(0, Side::right) == doctest::Approx(2.5));
    CHECK(e.f(0) == 0.0);
}

TEST_CASE("assumption reports") {
    const auto mmk = SlackeningModel::mmk(3, 1.0 / 3).check_assumptions();
    CHECK(mmk.s0);
    CHECK(mmk.s1);
    CHECK(mmk.s2);
    REQUIRE(mmk.M);
    CHECK(*mmk.M == 3.0);

    const auto ex = SlackeningModel::exponential(1, 1).check_assumptions();
    CHECK(ex.s0);
    CHECK(ex.s1);
    CHECK_FALSE(ex.s2);
    CHECK_FALSE(ex.M);

    const auto sq = SlackeningModel::sqrt_smooth(1.5, 1).check_assumptions();
    CHECK(sq.s2);
    REQUIRE(sq.M);
    CHECK(*sq.M == 3.0);
    // f'(r) at large r approaches the reported slope
    CHECK(SlackeningModel::sqrt_smooth(1.5, 1).fprime(1e6) == doctest::Approx(3.0).epsilon(1e-9));

    const auto pw = SlackeningModel::piecewise({{-2, -1}, {-0.5, -1}, {0.5, 1}, {2, 4}}).check_assumptions();
    CHECK(pw.s1);
    REQUIRE(pw.M);
    CHECK(*pw.M == doctest::Approx(2.0));
    const auto pw2 = SlackeningModel::piecewise({{-1, -2}, {1, 2}}).check_assumptions();
    CHECK_FALSE(pw2.s1);
}

TEST_CASE("constructor invariants") {
    CHECK_THROWS_AS(SlackeningModel::mmk(-1, 0.3), ValidationError);
    CHECK_THROWS_AS(SlackeningModel::mmk(1, 0), ValidationError);
    CHECK_THROWS_AS(SlackeningModel::sqrt_smooth(1, 0), ValidationError);
    CHECK_THROWS_AS(SlackeningModel::exponential(0, 1), ValidationError);
    // unsorted
    CHECK_THROWS_AS(SlackeningModel::piecewise({{1, 1}, {-1, -1}}), ValidationError);
    // decreasing
    CHECK_THROWS_AS(SlackeningModel::piecewise({{-1, 1}, {0, 0}, {1, 2}}), ValidationError);
    // f(0) != 0
    CHECK_THROWS_AS(SlackeningModel::piecewise({{-1, 0}, {1, 2}}), ValidationError);
    // kink at zero
    CHECK_THROWS_AS(SlackeningModel::piecewise({{-1, -1}, {0, 0}, {1, 2}}), ValidationError);
    // flat at zero
    CHECK_THROWS_AS(SlackeningModel::piecewise({{-1, 0}, {-0.5, 0}, {0.5, 0}, {1, 1}}), ValidationError);
}

TEST_CASE("property: monotone on sampled grids") {
    testgen::Gen g(11);
    for (const auto& m : sample_models()) {
        for (int trial = 0; trial < 200; ++trial) {
            const double a = g.uniform(-5, 5), b = g.uniform(-5, 5);
            const double r1 = std::min(a, b), r2 = std::max(a, b);
            if (r1 == r2) continue;
            // MMK and the flat piecewise segment are constant under
            // compression, so monotone means non-decreasing there.
            CHECK(m.f(r1) <= m.f(r2));
            if (r1 > -0.02) CHECK(m.f(r1) < m.f(r2));
        }
    }
}

TEST_CASE("property: derivative matches central differences away from kinks") {
    testgen::Gen g(12);
    const double h = 1e-6;
    for (const auto& m : sample_models()) {
        for (int trial = 0; trial < 200; ++trial) {
            const double r = g.uniform(-3, 3);
            if (near_kink(m, r, h)) continue;
            const double fd = (m.f(r + h) - m.f(r - h)) / (2 * h);
            CHECK(std::fabs(fd - m.fprime(r)) <= 1e-6 * std::max(1.0, std::fabs(m.fprime(r))));
        }
    }
}

TEST_CASE("property: primitive differentiates to f") {
    testgen::Gen g(13);
    const double h = 1e-5;
    for (const auto& m : sample_models()) {
        CHECK(m.primitive(0) == 0.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double r = g.uniform(-3, 3);
            if (near_kink(m, r, h)) continue;
            const double fd = (m.primitive(r + h) - m.primitive(r - h)) / (2 * h);
            CHECK(fd == doctest::Approx(m.f(r)).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("property: odd and even parts") {
    testgen::Gen g(14);
    for (const auto& m : sample_models()) {
        for (int trial = 0; trial < 100; ++trial) {
            const double r = g.uniform(-4, 4);
            const double size = std::fabs(m.f(r)) + std::fabs(m.f(-r));
            CHECK(std::fabs(m.odd_part(r) + m.even_part(r) - m.f(r)) <= 4e-16 * size);
            CHECK(m.odd_part(-r) == -m.odd_part(r));
            CHECK(m.even_part(-r) == m.even_part(r));
        }
    }
    // the sqrt law has a linear odd part
    const auto s = SlackeningModel::sqrt_smooth(2.0, 0.3);
    for (int trial = 0; trial < 100; ++trial) {
        const double r = g.uniform(-10, 10);
        CHECK(s.odd_part(r) == doctest::Approx(2.0 * r).epsilon(1e-13).scale(1.0));
    }
}
