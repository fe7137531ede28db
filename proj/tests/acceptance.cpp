// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "fishbone/diagram.hpp"
#include "fishbone/errors.hpp"
#include "fishbone/flexural.hpp"
#include "fishbone/floquet.hpp"
#include "fishbone/limit.hpp"
#include "fishbone/piecewise.hpp"
#include "fishbone/projection.hpp"
#include "gen.hpp"

using namespace fishbone;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kM = 3.0;
constexpr double kR0 = 1.0 / 3.0;

int failed = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

RunConfig academic(const std::string& model, int j, int k) {
    ConfigValues v = preset("academic").values;
    v["model"] = model;
    v["j"] = std::to_string(j);
    v["k"] = std::to_string(k);
    return resolve_config(v);
}

// shared with criterion 6
EngineComparison c1;
bool c1_ran = false;

void criterion1() {
    Clock clock;
    SweepOptions opt;
    opt.tol = {1e-10, 1e-12};
    try {
        c1 = compare_engines(academic("mmkbar", 1, 1), Axis{0.1, 6.0, 50}, Axis{-20.0, 20.0, 50}, opt);
        c1_ran = true;
    } catch (const std::exception& e) {
        report(1, false, e.what());
        return;
    }
    const double t = clock.seconds();
    const BridgeParams p{1.0, c1.beta, 3.0, 1, 1};
    const double there = std::fabs(barf_delta(p, kM, kR0, c1.q, c1.beta));
    const bool ok = c1.failures == 0 && c1.max_abs <= 1e-6 && t < 300;
    report(1, ok,
           fmt("max|dclosed - dnumeric| = %.3g at (q, beta) = (%.4g, %.4g) where |delta| = %.4g (relative %.2g), "
               "limit 1e-6; %zu cells, %zu failed; %.1f s",
               c1.max_abs, c1.q, c1.beta, there, c1.max_abs / there, c1.cells, c1.failures, t));
}

void criterion2() {
    Clock clock;
    const auto mmk = SlackeningModel::mmk(kM, kR0);
    double worst = 0.0;
    int wj = 0, wk = 0;
    double wr = 0.0;
    for (int j = 1; j <= 6; ++j)
        for (int k = 1; k <= 6; ++k) {
            const ProjectionKernel quad(mmk, j, k, ProjectionEngine::quadrature);
            for (int i = 0; i < 1000; ++i) {
                const double r = -10.0 + 20.0 * i / 999.0;
                const double err = std::fabs(quad.g_jk(r) - 2 * kM / pi * mmk_H(j, k, kR0, r));
                if (err > worst) {
                    worst = err;
                    wj = j;
                    wk = k;
                    wr = r;
                }
            }
        }
    report(2, worst <= 1e-8,
           fmt("max|g_jk - (2m/pi) H_jk| = %.3g at j=%d k=%d r=%.4g, limit 1e-8; %.1f s", worst, wj, wk, wr,
               clock.seconds()));
}

void criterion3() {
    Clock clock;
    const auto mmk = SlackeningModel::mmk(kM, kR0);
    const ProjectionKernel kernel(mmk, 1, 1, ProjectionEngine::closed_form);
    bool ok = true;
    std::string detail;
    double worst_end = 0.0;
    bool stable_seen = false, unstable_seen = false;
    for (double beta : {0.5, 2.0, 5.0, 12.0, 30.0}) {
        BridgeParams p{1.0, beta, 3.0, 1, 1};
        const auto lq = limit_quantities(p, kM);
        (std::fabs(lq.delta_inf) > 2 ? unstable_seen : stable_seen) = true;
        double prev = HUGE_VAL;
        for (double q : {1e2, 1e3, 1e4}) {
            const double gap = std::fabs(monodromy_numeric(p, kernel, q).verdict.delta - lq.delta_inf);
            if (!(gap < prev)) {
                ok = false;
                detail += fmt(" [beta=%g: gap not decreasing at q=%g]", beta, q);
            }
            prev = gap;
        }
        worst_end = std::max(worst_end, prev);
    }
    const BridgeParams p{1.0, 2.0, 3.0, 1, 1};
    const double tau = detect_period(p, kernel, 1e4);
    const double limit = limit_period(limit_quantities(p, kM));
    const double tau_rel = std::fabs(tau - limit) / limit;
    const double t = clock.seconds();
    ok = ok && worst_end <= 0.05 && tau_rel <= 1e-2 && stable_seen && unstable_seen && t < 120;
    report(3, ok,
           fmt("max|d(1e4) - dinf| = %.3g (limit 0.05), gaps decreasing, tau(1e4) rel. error %.3g (limit 1e-2); %.1f s",
               worst_end, tau_rel, t) +
               detail);
}

void criterion4() {
    Clock clock;
    // (a) smooth law, even j: constant Hill coefficient and |delta| <= 2
    const auto sq = SlackeningModel::sqrt_smooth(kM, 0.5);
    double coeff_dev = 0.0, max_delta = 0.0;
    int count = 0;
    for (int k = 1; k <= 3; ++k) {
        const BridgeParams p{1.0, 2.0, 3.0, 2, k};
        const ProjectionKernel kernel(sq, 2, k);
        for (int i = 0; i < 20; ++i) {
            const double q = 0.1 * std::pow(1000.0, i / 19.0);
            const Trajectory tr = solve_flexural(p, kernel, q);
            const double g0 = kernel.g_jk(tr.samples.front().u);
            for (const auto& s : tr.samples)
                coeff_dev = std::max(coeff_dev, std::fabs(kernel.g_jk(s.u) - g0) / std::fabs(g0));
            max_delta = std::max(max_delta, std::fabs(monodromy_numeric(p, kernel, q, std::nullopt, {}, tr.period).verdict.delta));
            ++count;
        }
    }
    // (b) every even-j MMK configuration
    int verdicts = 0, even_stable = 0;
    testgen::Gen g(404);
    for (int j = 2; j <= 8; j += 2)
        for (int k = 1; k <= 6; ++k)
            for (int trial = 0; trial < 5; ++trial) {
                const BridgeParams p{g.uniform(0.01, 3), g.uniform(0, 40), g.uniform(0.5, 5), j, k};
                const auto v = high_energy_verdict(p, SlackeningModel::mmk(g.uniform(0.5, 200), g.uniform(0.01, 1)));
                ++verdicts;
                even_stable += v.verdict == HighEnergyVerdict::even_j_always_stable;
            }
    const bool ok = coeff_dev <= 1e-8 && max_delta <= 2.0 && even_stable == verdicts;
    report(4, ok,
           fmt("(a) %d orbits: Hill coefficient rel. variation %.3g, max|delta| = %.12g; (b) %d/%d even-j verdicts "
               "even_j_always_stable; %.1f s",
               count, coeff_dev, max_delta, even_stable, verdicts, clock.seconds()));
}

// Distance from beta_N to the nearest cell of a detected band.
double band_gap(const DetectedTip& t, double beta_n) {
    return std::max({0.0, t.beta_lo - beta_n, beta_n - t.beta_hi});
}

void criterion5() {
    Clock clock;
    const double rb = r_bar(kR0);
    const Axis q{rb * (1 - 1e-3), rb * (1 + 1e-3), 41};
    std::string detail;
    bool ok = true;

    // j = 1: the window starts above -2 gamma m, where the linear regime is
    // itself unstable
    {
        const RunConfig cfg = academic("mmkbar", 1, 1);
        const Axis b{-17.5, 30.0, 951};
        const auto found = detect_tips(sweep_grid(cfg, q, b));
        const auto tips = tongue_tips(cfg.params, kM, 5);
        double worst = 0.0;
        for (const TongueTip& t : tips) {
            double best = HUGE_VAL;
            for (const DetectedTip& d : found) best = std::min(best, band_gap(d, t.beta));
            worst = std::max(worst, best);
        }
        ok = ok && found.size() == tips.size() && worst <= b.spacing() * (1 + 1e-9);
        detail += fmt("j=1: %zu bands for N=1..5, max distance to beta_N %.3g (cell %.3g)", found.size(), worst,
                      b.spacing());
    }
    // j = 2: only even N
    {
        const RunConfig cfg = academic("mmkbar", 2, 2);
        const Axis b{-4.4, 30.0, 689};
        const auto found = detect_tips(sweep_grid(cfg, q, b));
        int matched_even = 0, odd_present = 0, expected_even = 0;
        for (const TongueTip& t : tongue_tips(cfg.params, kM, 5)) {
            if (t.beta < b.lo || t.beta > b.hi) continue;
            bool hit = false;
            for (const DetectedTip& d : found) hit = hit || band_gap(d, t.beta) <= b.spacing() * (1 + 1e-9);
            if (t.N % 2 == 0) {
                ++expected_even;
                matched_even += hit;
            } else {
                odd_present += hit;
            }
        }
        ok = ok && odd_present == 0 && matched_even == expected_even &&
             found.size() == static_cast<std::size_t>(expected_even);
        detail += fmt("; j=2: %zu bands, %d/%d even-N tips matched, %d odd-N bands", found.size(), matched_even,
                      expected_even, odd_present);
    }
    report(5, ok, detail + fmt("; %.1f s", clock.seconds()));
}

void criterion6() {
    Clock clock;
    // energy drift
    testgen::Gen g(606);
    double worst_drift = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int j = g.integer(1, 4);
        const BridgeParams p{g.uniform(0.1, 2.0), 1.0, 3.0, j, j};
        const int kind = trial % 4;
        const double a = g.uniform(1, 5), b = g.uniform(0.2, 1.5);
        const SlackeningModel model = kind == 1   ? SlackeningModel::sqrt_smooth(a, b)
                                      : kind == 2 ? SlackeningModel::exponential(a, b)
                                                  : SlackeningModel::mmk(a, b);
        const ProjectionKernel k(model, j, j, kind == 3 ? ProjectionEngine::closed_form : ProjectionEngine::quadrature);
        worst_drift = std::max(worst_drift, solve_flexural(p, k, g.uniform(0.1, 3.0)).energy_drift);
    }
    // cyclic invariance
    double worst_cyc = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        StepPotential pot;
        const int n = g.integer(2, 8);
        for (int i = 0; i < n; ++i) pot.steps.push_back(Step{g.uniform(-4, 40), g.uniform(0.05, 2)});
        const double d0 = meissner_discriminant(pot).delta;
        for (int r = 1; r < n; ++r) {
            StepPotential rot = pot;
            std::rotate(rot.steps.begin(), rot.steps.begin() + r, rot.steps.end());
            worst_cyc = std::max(worst_cyc, std::fabs(meissner_discriminant(rot).delta - d0) / std::max(1.0, std::fabs(d0)));
        }
    }
    const bool det_ok = c1_ran && c1.failures == 0 && c1.max_det_drift <= 1e-8;
    const bool ok = worst_drift <= 1e-8 && det_ok && worst_cyc <= 1e-12;
    report(6, ok,
           fmt("energy drift max %.3g (limit 1e-8); |det M - 1| max %.3g over criterion-1 cells (limit 1e-8); "
               "cyclic invariance %.3g (limit 1e-12); %.1f s",
               worst_drift, c1_ran ? c1.max_det_drift : NAN, worst_cyc, clock.seconds()));
}

void criterion7() {
    Clock clock;
    const auto mmk = SlackeningModel::mmk(kM, kR0);
    double worst_tau = 0.0, worst_delta = 0.0;
    for (int j = 1; j <= 3; ++j)
        for (double beta : {0.5, 2.0, 7.0}) {
            const BridgeParams p{1.0, beta, 3.0, j, j};
            const ProjectionKernel k(mmk, j, j, ProjectionEngine::closed_form);
            const double q = 0.5 * kR0;
            const double w = std::sqrt(std::pow(j, 4) + 2 * kM);
            const double A = std::sqrt(beta * j * j + 2 * 3.0 * kM);
            const double tau = 2 * pi / w, delta = 2 * std::cos(A * tau);
            const auto r = monodromy_numeric(p, k, q);
            worst_tau = std::max(worst_tau, std::fabs(r.period - tau) / tau);
            worst_delta = std::max(worst_delta, std::fabs(r.verdict.delta - delta) / std::fabs(delta));
        }
    report(7, worst_tau <= 1e-9 && worst_delta <= 1e-9,
           fmt("tau rel. error %.3g, delta rel. error %.3g (limit 1e-9) over j=1..3 and 3 beta; %.1f s", worst_tau,
               worst_delta, clock.seconds()));
}

void criterion8() {
    Clock clock;
    ConfigValues v = preset("tnb").values;
    v["gamma"] = "3";
    v["beta"] = "0";
    const RunConfig cfg = resolve_config(v);
    const double beta_ref = cfg.beta_reference.value_or(8.1833e-5);
    SweepOptions opt;
    opt.engine = Engine::numeric;
    const Axis q{0.016, 1.6, 100};
    const StabilityGrid grid = sweep_grid(cfg, q, Axis{0.0, 2e-4, 100}, opt);
    const StabilityGrid line = sweep_grid(cfg, q, Axis{beta_ref, beta_ref, 1}, opt);
    std::size_t stable = 0;
    for (StabilityClass c : line.cls) stable += c == StabilityClass::stable;
    const double t = clock.seconds();
    const bool ok = grid.failures() == 0 && line.failures() == 0 && stable == line.cls.size() && t < 600;
    report(8, ok,
           fmt("100x100 grid q in [0.016, 1.6], beta in [0, 2e-4]: %zu failed cells; beta_ref = %g line: %zu/%zu stable; "
               "%.1f s",
               grid.failures(), beta_ref, stable, line.cls.size(), t));
}

}  // namespace

int main() {
    const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4,
                                           criterion5, criterion6, criterion7, criterion8};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
