#include "fishbone/flexural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fishbone/errors.hpp"
#include "fishbone/orbit.hpp"

namespace fishbone {

namespace {

double stiffness(const BridgeParams& p) { return p.alpha * std::pow(static_cast<double>(p.j), 4); }

OrbitOptions orbit_options(const BridgeParams& p, const ModeKernel& kernel, const Tolerances& tol,
                           double horizon_periods) {
    OrbitOptions o;
    o.tol = tol;
    o.stop = OrbitStop::period;
    o.horizon = horizon_periods * linear_period(p, kernel);
    o.switches = kernel.switch_points();
    return o;
}

template <class Observer>
OrbitEnd<double, 2> run(const BridgeParams& p, const ModeKernel& kernel, double q, const OrbitOptions& o,
                        Observer&& obs) {
    if (!(q > 0) || !std::isfinite(q)) throw ValidationError("q", "amplitude q must be positive");
    if (kernel.j() != p.j) throw ValidationError("j", "kernel and parameters disagree on j");
    const double a = stiffness(p);
    auto rhs = [&](double, const Vec<double, 2>& y, int branch, Vec<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = -(a * y[0] + 2.0 * kernel.force_on_branch(y[0], branch));
    };
    return integrate_orbit<double, 2>(rhs, Vec<double, 2>{q, 0.0}, o, obs);
}

}  // namespace

double linear_period(const BridgeParams& p, const ModeKernel& kernel) {
    return 2.0 * std::numbers::pi / std::sqrt(stiffness(p) + 2.0 * kernel.linear_slope());
}

double Trajectory::u_at(double t) const {
    if (samples.empty()) return 0.0;
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const OrbitSample& s, double x) { return s.t < x; });
    if (it == samples.begin()) return samples.front().u;
    if (it == samples.end()) return samples.back().u;
    const OrbitSample& b = *it;
    const OrbitSample& a = *(it - 1);
    const double h = b.t - a.t;
    if (h <= 0) return b.u;
    const double s = (t - a.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * a.u + h10 * h * a.du + h01 * b.u + h11 * h * b.du;
}

Trajectory solve_flexural(const BridgeParams& p, const ModeKernel& kernel, double q, const FlexuralOptions& opt) {
    Trajectory tr;
    tr.q = q;
    tr.tol = opt.tol;
    const OrbitOptions o = orbit_options(p, kernel, opt.tol, opt.horizon_periods);
    const auto end = run(p, kernel, q, o, [&](double t, const Vec<double, 2>& y) {
        tr.samples.push_back({t, y[0], y[1]});
    });
    tr.period = end.t;
    tr.steps = end.accepted;
    if (opt.audit_energy) {
        const double e0 = flexural_energy(p, kernel, q, 0.0);
        double drift = 0.0;
        for (const auto& s : tr.samples)
            drift = std::max(drift, std::fabs(flexural_energy(p, kernel, s.u, s.du) - e0));
        tr.energy_drift = drift / std::fabs(e0);
    } else {
        tr.energy_drift = std::numeric_limits<double>::quiet_NaN();
    }
    return tr;
}

double detect_period(const BridgeParams& p, const ModeKernel& kernel, double q, const Tolerances& tol,
                     double horizon_periods) {
    const OrbitOptions o = orbit_options(p, kernel, tol, horizon_periods);
    return run(p, kernel, q, o, [](double, const Vec<double, 2>&) {}).t;
}

double flexural_energy(const BridgeParams& p, const ModeKernel& kernel, double u, double du) {
    return 0.5 * du * du + 0.5 * stiffness(p) * u * u + 2.0 * kernel.potential(u);
}

}  // namespace fishbone
