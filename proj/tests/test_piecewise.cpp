#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fishbone/errors.hpp"
#include "fishbone/flexural.hpp"
#include "fishbone/piecewise.hpp"
#include "gen.hpp"

using namespace fishbone;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kM = 3.0;
constexpr double kR0 = 1.0 / 3.0;

BridgeParams params(int j, double beta = 2.0) { return {1.0, beta, 3.0, j, j}; }

// Times at which the integrated orbit sits on +-rbar; the integrator ends
// steps exactly on switch levels.
std::vector<double> crossing_times(const Trajectory& tr, double rbar) {
    std::vector<double> t;
    for (const auto& s : tr.samples)
        if (std::fabs(std::fabs(s.u) - rbar) <= 1e-12 * rbar) t.push_back(s.t);
    return t;
}

}  // namespace

TEST_CASE("bar force") {
    CHECK(r_bar(1.0 / 3.0) == doctest::Approx(4.0 / (3.0 * pi)).epsilon(1e-15));
    const double rb = r_bar(kR0);
    CHECK(barf_j(1, kM, kR0, 0.0) == 0.0);
    CHECK(barf_j(1, kM, kR0, 0.5 * rb) == doctest::Approx(kM * 0.5 * rb).epsilon(1e-15));
    // odd j: slopes m(1 +- 1/j)/2 outside
    CHECK(barf_j(1, kM, kR0, 2.0) == doctest::Approx(kM * 2.0).epsilon(1e-15));
    CHECK(barf_j(1, kM, kR0, -2.0) == doctest::Approx(-kM * rb).epsilon(1e-15));
    CHECK(barf_j(3, kM, kR0, 2.0) == doctest::Approx(0.5 * kM * (4.0 / 3) * 2.0 + 0.5 * kM * (2.0 / 3) * rb).epsilon(1e-15));
    // even j: symmetric, slope m/2 outside
    CHECK(barf_j(2, kM, kR0, 2.0) == doctest::Approx(-barf_j(2, kM, kR0, -2.0)).epsilon(1e-15));
    CHECK(barf_j_slope(2, kM, kR0, 2.0) == doctest::Approx(0.5 * kM).epsilon(1e-15));
    CHECK(barf_j_slope(3, kM, kR0, -2.0) == doctest::Approx(0.5 * kM * (2.0 / 3)).epsilon(1e-15));
}

TEST_CASE("property: the bar force is continuous with kinks only at +-rbar") {
    testgen::Gen g(61);
    for (int trial = 0; trial < 50; ++trial) {
        const int j = g.integer(1, 6);
        const double m = g.uniform(0.5, 5), r0 = g.uniform(0.05, 1);
        const double rb = r_bar(r0);
        for (double c : {rb, -rb}) {
            CHECK(barf_j(j, m, r0, c + 1e-12) == doctest::Approx(barf_j(j, m, r0, c - 1e-12)).epsilon(1e-10).scale(m));
            // for j = 1 the outer slope above rbar is m again
            const bool smooth = j == 1 && c > 0;
            CHECK((barf_j_slope(j, m, r0, c, Side::left) == barf_j_slope(j, m, r0, c, Side::right)) == smooth);
        }
        const double r = g.uniform(-3, 3);
        if (std::fabs(std::fabs(r) - rb) > 1e-3)
            CHECK(barf_j_slope(j, m, r0, r, Side::left) == barf_j_slope(j, m, r0, r, Side::right));
    }
}

TEST_CASE("linear regime") {
    const auto s = barf_times(params(1), kM, kR0, r_bar(kR0));
    CHECK(s.regime == PiecewiseRegime::linear);
    CHECK(s.period == doctest::Approx(2 * pi / std::sqrt(7.0)).epsilon(1e-15));
    const auto steps = barf_steps(s);
    REQUIRE(steps.steps.size() == 1);
    CHECK(steps.steps[0].a2 == doctest::Approx(2.0 + 18.0).epsilon(1e-15));
    CHECK(barf_delta(params(1), kM, kR0, 0.1, 2.0) ==
          doctest::Approx(2 * std::cos(std::sqrt(20.0) * 2 * pi / std::sqrt(7.0))).epsilon(1e-13));
}

TEST_CASE("durations agree with event-located integration") {
    for (int j : {1, 2, 3}) {
        const BarKernel bar(j, kM, kR0);
        for (double q : {0.5, 1.0, 4.0}) {
            const auto s = barf_times(params(j), kM, kR0, q);
            const Trajectory tr = solve_flexural(params(j), bar, q);
            const auto t = crossing_times(tr, bar.rbar());
            REQUIRE(t.size() == 4);
            CHECK(std::fabs(tr.period - s.period) <= 1e-9 * s.period);
            CHECK(std::fabs(2 * t[0] - s.dt[0]) <= 1e-8);
            CHECK(std::fabs(t[1] - t[0] - s.dt[1]) <= 1e-8);
            CHECK(std::fabs(t[2] - t[1] - s.dt[2]) <= 1e-8);
            CHECK(std::fabs(t[3] - t[2] - s.dt[1]) <= 1e-8);
        }
    }
}

TEST_CASE("step layout") {
    const auto odd = barf_times(params(1), kM, kR0, 2.0);
    CHECK(odd.regime == PiecewiseRegime::odd_j);
    const auto so = barf_steps(odd);
    REQUIRE(so.steps.size() == 4);
    CHECK(so.steps[0].dt == odd.dt[0]);
    CHECK(so.steps[1].dt == odd.dt[1]);
    CHECK(so.steps[2].dt == odd.dt[2]);
    CHECK(so.steps[3].dt == odd.dt[1]);
    CHECK(so.period() == doctest::Approx(odd.period).epsilon(1e-15));

    const auto even = barf_times(params(2), kM, kR0, 2.0);
    CHECK(even.regime == PiecewiseRegime::even_j);
    CHECK(even.dt[0] == doctest::Approx(even.dt[2]).epsilon(1e-15));
    CHECK(even.omega[0] == doctest::Approx(std::sqrt(16.0 + kM)).epsilon(1e-15));
    CHECK(even.hill_a2[0] == doctest::Approx(even.hill_a2[2]).epsilon(1e-15));
}

TEST_CASE("high amplitude durations tend to half periods") {
    const auto s = barf_times(params(1), kM, kR0, 1e6);
    const double wp = std::sqrt(1.0 + kM * 2), wm = std::sqrt(1.0);
    CHECK(s.dt[0] == doctest::Approx(pi / wp).epsilon(1e-5));
    CHECK(s.dt[2] == doctest::Approx(pi / wm).epsilon(1e-5));
    CHECK(s.dt[1] <= 1e-5);
}

TEST_CASE("closed form equals the product of its steps") {
    testgen::Gen g(62);
    for (int trial = 0; trial < 100; ++trial) {
        const int j = g.integer(1, 4);
        const double q = g.log_uniform(0.1, 100), beta = g.uniform(-5, 30);
        BridgeParams p = params(j, beta);
        const auto s = barf_times(p, kM, kR0, q);
        CHECK(barf_delta(p, kM, kR0, q, beta) == meissner_discriminant(barf_steps(s)).delta);
    }
}

TEST_CASE("property: delta is continuous at the onset of slackening") {
    const double rb = r_bar(kR0);
    for (int j : {1, 2, 3})
        for (double beta : {-1.0, 2.0, 9.0}) {
            const double lin = barf_delta(params(j), kM, kR0, rb, beta);
            double prev = HUGE_VAL;
            for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
                const double gap = std::fabs(barf_delta(params(j), kM, kR0, rb * (1 + d), beta) - lin);
                CHECK(gap <= prev);
                prev = gap;
            }
            CHECK(prev <= 1e-3);
        }
}

TEST_CASE("property: delta is locally Lipschitz in q and beta") {
    testgen::Gen g(63);
    for (int trial = 0; trial < 100; ++trial) {
        const double q = g.uniform(0.5, 5), beta = g.uniform(-5, 20), h = 1e-7;
        const BridgeParams p = params(1);
        const double d0 = barf_delta(p, kM, kR0, q, beta);
        const double dq = std::fabs(barf_delta(p, kM, kR0, q + h, beta) - d0) / h;
        const double db = std::fabs(barf_delta(p, kM, kR0, q, beta + h) - d0) / h;
        CHECK(std::isfinite(dq));
        CHECK(std::isfinite(db));
        const double dq2 = std::fabs(barf_delta(p, kM, kR0, q + h / 10, beta) - d0) / (h / 10);
        CHECK(dq2 == doctest::Approx(dq).epsilon(1e-2).scale(1.0 + std::fabs(d0)));
    }
}

TEST_CASE("failures") {
    BridgeParams p{1.0, 2.0, 3.0, 1, 2};
    CHECK_THROWS_AS(barf_times(p, kM, kR0, 1.0), ConfigError);
    CHECK_THROWS_AS(barf_times(params(1), kM, kR0, 0.0), ValidationError);
}
