#pragma once

// Driver for second-order oscillator orbits carried in a state vector whose
// first two components are (u, du/dt). It integrates with DOP853 and lands
// steps exactly on two kinds of events:
//
//   * switches: levels u = s where the right-hand side changes formula. The
//     rhs receives a branch index (number of switch levels below u) that is
//     held fixed over each step, so no stage ever straddles a switch.
//   * the period: the first time t > 0 where du/dt falls through zero.
//
// Event times are refined by re-taking the step from its start with a
// shorter size, so located events carry full integrator accuracy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

#include "fishbone/dop853.hpp"
#include "fishbone/errors.hpp"

namespace fishbone {

enum class OrbitStop { period, time };

struct OrbitOptions {
    Tolerances tol;
    OrbitStop stop = OrbitStop::period;
    double t_end = 0.0;    // used when stop == time
    double horizon = 0.0;  // HorizonError once t exceeds this
    double max_step = std::numeric_limits<double>::infinity();
    std::vector<double> switches;  // sorted ascending
};

template <class Real, std::size_t N>
struct OrbitEnd {
    Vec<Real, N> y{};
    Real t = 0;
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

namespace detail {

inline int branch_of(double u, const std::vector<double>& switches) {
    return static_cast<int>(std::lower_bound(switches.begin(), switches.end(), u) - switches.begin());
}

}  // namespace detail

// rhs(t, y, branch, dy) and observer(t, y) are callables. The observer sees
// the initial point, every accepted step and every located event.
template <class Real, std::size_t N, class Rhs, class Observer>
OrbitEnd<Real, N> integrate_orbit(Rhs&& rhs, const Vec<Real, N>& y0, const OrbitOptions& opt,
                                  Observer&& observer) {
    static_assert(N >= 2);
    using State = Vec<Real, N>;
    const auto& sw = opt.switches;

    int branch = detail::branch_of(static_cast<double>(y0[0]), sw);
    if (branch < static_cast<int>(sw.size()) && static_cast<double>(y0[0]) == sw[branch]) {
        // Starting on a switch level: pick the side the motion heads into.
        State probe;
        rhs(Real(0), y0, branch + 1, probe);
        const double heading = y0[1] != 0 ? static_cast<double>(y0[1]) : static_cast<double>(probe[1]);
        if (heading > 0) ++branch;
    }

    auto f = [&](Real t, const State& y, State& dy) { rhs(t, y, branch, dy); };
    Dop853<Real, N, decltype(f)> dp(f, opt.tol);

    OrbitEnd<Real, N> out;
    Real t = 0;
    State y = y0, y1, f0;
    dp.eval(t, y, f0);
    observer(t, y);

    const double span = opt.stop == OrbitStop::time ? opt.t_end : opt.horizon;
    const double hmax = std::min(opt.max_step, span);
    if (opt.stop == OrbitStop::time && opt.t_end <= 0.0) {
        out.y = y;
        return out;
    }
    Real h = dp.initial_step(t, y, f0, static_cast<Real>(hmax));
    bool rejected_last = false;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // phi(s): the event function evaluated at the end of a step of size s.
    auto event_value = [&](int which, const State& ys) -> double {
        return which < 0 ? static_cast<double>(ys[1]) : static_cast<double>(ys[0]) - sw[which];
    };
    auto refine = [&](int which, double g0, double g1, Real hstep) -> Real {
        Real lo = 0, hi = hstep;
        double flo = g0, fhi = g1;
        int side = 0;
        State ys;
        Real best = hi;
        double best_abs = std::fabs(fhi);
        for (int it = 0; it < 100; ++it) {
            if (static_cast<double>(hi - lo) <= 4 * eps * (std::fabs(static_cast<double>(t)) + std::fabs(static_cast<double>(hi))))
                break;
            Real s = hi - static_cast<Real>(fhi) * (hi - lo) / static_cast<Real>(fhi - flo);
            if (!(s > lo && s < hi)) s = (lo + hi) / 2;
            dp.step(t, y, f0, s, ys);
            const double fs = event_value(which, ys);
            if (std::fabs(fs) < best_abs) {
                best_abs = std::fabs(fs);
                best = s;
            }
            if (fs == 0.0) return s;
            if ((fs < 0) == (flo < 0)) {
                lo = s;
                flo = fs;
                if (side == +1) fhi /= 2;
                side = +1;
            } else {
                hi = s;
                fhi = fs;
                if (side == -1) flo /= 2;
                side = -1;
            }
        }
        return best;
    };

    for (;;) {
        bool last = false;
        if (opt.stop == OrbitStop::time && static_cast<double>(t + h) >= opt.t_end * (1 - 4 * eps)) {
            h = static_cast<Real>(opt.t_end) - t;
            last = true;
        }
        if (static_cast<double>(h) <= 16 * eps * std::max(1.0, std::fabs(static_cast<double>(t)))) {
            std::ostringstream msg;
            msg << "step size underflow at t=" << static_cast<double>(t);
            throw StiffnessError(msg.str());
        }

        const double err = dp.step(t, y, f0, h, y1);
        if (!(err <= 1.0)) {
            const double fac = std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -1.0 / 8.0)) : 0.1;
            h *= static_cast<Real>(fac);
            rejected_last = true;
            ++out.rejected;
            continue;
        }

        // Earliest event inside (t, t + h].
        int event = -2;
        Real event_h = h;
        bool rising = false;
        for (std::size_t i = 0; i < sw.size(); ++i) {
            const double d0 = static_cast<double>(y[0]) - sw[i];
            const double d1 = static_cast<double>(y1[0]) - sw[i];
            if (d0 == 0.0 || ((d0 < 0) == (d1 < 0) && d1 != 0.0)) continue;
            const Real s = d1 == 0.0 ? h : refine(static_cast<int>(i), d0, d1, h);
            if (event == -2 || s < event_h) {
                event = static_cast<int>(i);
                event_h = s;
                rising = d0 < 0;
            }
        }
        if (opt.stop == OrbitStop::period && y[1] > 0 && y1[1] <= 0) {
            const Real s = y1[1] == 0 ? h : refine(-1, static_cast<double>(y[1]), static_cast<double>(y1[1]), h);
            if (event == -2 || s <= event_h) {
                event = -1;
                event_h = s;
            }
        }

        const double fac = err > 0 ? std::min(6.0, std::max(1.0 / 3.0, 0.9 * std::pow(err, -1.0 / 8.0))) : 6.0;
        Real h_next = h * static_cast<Real>(fac);
        if (rejected_last) h_next = std::min(h_next, h);
        rejected_last = false;

        if (event != -2) {
            if (event_h != h) dp.step(t, y, f0, event_h, y1);
            t += event_h;
            y = y1;
            ++out.accepted;
            if (event >= 0) {
                y[0] = static_cast<Real>(sw[event]);
                branch = event + (rising ? 1 : 0);
            } else {
                y[1] = 0;
            }
            dp.eval(t, y, f0);
            observer(t, y);
            if (event == -1 || (last && event_h == h)) break;
            h = std::min<Real>(h, static_cast<Real>(hmax));
        } else {
            t += h;
            y = y1;
            ++out.accepted;
            dp.eval(t, y, f0);
            observer(t, y);
            if (last) break;
            h = std::min<Real>(h_next, static_cast<Real>(hmax));
        }

        if (opt.horizon > 0.0 && static_cast<double>(t) > opt.horizon) {
            std::ostringstream msg;
            msg << "no period found before horizon t=" << opt.horizon;
            throw HorizonError(msg.str());
        }
    }
    out.t = t;
    out.y = y;
    out.evaluations = dp.evaluations();
    return out;
}

}  // namespace fishbone
