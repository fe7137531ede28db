#include "fishbone/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fishbone/errors.hpp"
#include "fishbone/orbit.hpp"

namespace fishbone {

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

void StepPotential::validate() const {
    if (steps.empty()) throw ValidationError("steps", "a step potential needs at least one step");
    for (const Step& s : steps) {
        if (!(s.dt > 0) || !std::isfinite(s.dt)) throw ValidationError("dt", "step durations must be positive");
        if (!std::isfinite(s.a2)) throw ValidationError("A", "step frequencies must be finite");
    }
}

double StepPotential::period() const {
    double t = 0.0;
    for (const Step& s : steps) t += s.dt;
    return t;
}

namespace {

struct Mat2L {
    long double a = 1, b = 0, c = 0, d = 1;
};

Mat2L mul(const Mat2L& x, const Mat2L& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2L transition_l(const Step& s) {
    const long double dt = s.dt;
    if (s.a2 > 0) {
        const long double A = std::sqrt(static_cast<long double>(s.a2));
        const long double c = std::cos(A * dt), sn = std::sin(A * dt);
        return {c, sn / A, -A * sn, c};
    }
    if (s.a2 < 0) {
        const long double k = std::sqrt(-static_cast<long double>(s.a2));
        const long double c = std::cosh(k * dt), sh = std::sinh(k * dt);
        return {c, sh / k, k * sh, c};
    }
    return {1, dt, 0, 1};
}

Mat2 narrow(const Mat2L& m) {
    return {static_cast<double>(m.a), static_cast<double>(m.b), static_cast<double>(m.c), static_cast<double>(m.d)};
}

}  // namespace

Mat2 transition_matrix(const Step& s) { return narrow(transition_l(s)); }

MeissnerResult meissner_discriminant(const StepPotential& pot) {
    pot.validate();
    Mat2L m;
    for (const Step& s : pot.steps) m = mul(transition_l(s), m);
    return {narrow(m), static_cast<double>(m.a + m.d)};
}

std::string_view to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::stable: return "stable";
        case StabilityClass::unstable: return "unstable";
        case StabilityClass::boundary_periodic: return "boundary_periodic";
        case StabilityClass::boundary_antiperiodic: return "boundary_antiperiodic";
        case StabilityClass::failed: return "failed";
    }
    return "?";
}

StabilityVerdict classify(double delta, double tol) {
    if (!(tol > 0)) throw ValidationError("tol", "classification tolerance must be positive");
    StabilityVerdict v{delta, StabilityClass::failed, tol};
    if (!std::isfinite(delta)) return v;
    const double a = std::fabs(delta);
    if (a > 2 + tol)
        v.cls = StabilityClass::unstable;
    else if (a < 2 - tol)
        v.cls = StabilityClass::stable;
    else
        v.cls = delta > 0 ? StabilityClass::boundary_periodic : StabilityClass::boundary_antiperiodic;
    return v;
}

namespace {

template <class Real>
MonodromyResult monodromy_impl(const BridgeParams& p, const ModeKernel& kernel, double q, double beta,
                               const MonodromyOptions& opt, double period) {
    const double a = p.alpha * std::pow(static_cast<double>(p.j), 4);
    const double bk = beta * p.k * p.k;
    const double g2 = 2.0 * p.gamma;
    using S = Vec<Real, 6>;
    auto rhs = [&](Real, const S& y, int branch, S& dy) {
        const double u = static_cast<double>(y[0]);
        dy[0] = y[1];
        dy[1] = -(a * y[0] + static_cast<Real>(2.0 * kernel.force_on_branch(u, branch)));
        const Real Q = static_cast<Real>(bk + g2 * kernel.coupling_on_branch(u, branch));
        dy[2] = y[3];
        dy[3] = -Q * y[2];
        dy[4] = y[5];
        dy[5] = -Q * y[4];
    };
    OrbitOptions o;
    o.tol = opt.tol;
    o.stop = OrbitStop::time;
    o.t_end = period;
    o.switches = kernel.switch_points();
    const S y0{static_cast<Real>(q), 0, 1, 0, 0, 1};
    const auto end = integrate_orbit<Real, 6>(rhs, y0, o, [](Real, const S&) {});
    const S& y = end.y;

    MonodromyResult r;
    r.monodromy = {static_cast<double>(y[2]), static_cast<double>(y[4]), static_cast<double>(y[3]),
                   static_cast<double>(y[5])};
    const Real det = y[2] * y[5] - y[4] * y[3];
    r.det_drift = std::fabs(static_cast<double>(det - 1));
    r.verdict = classify(static_cast<double>(y[2] + y[5]));
    r.period = period;
    r.closure_u = static_cast<double>(y[0] - static_cast<Real>(q));
    r.closure_du = static_cast<double>(y[1]);
    return r;
}

}  // namespace

MonodromyResult monodromy_numeric(const BridgeParams& p, const ModeKernel& kernel, double q,
                                  std::optional<double> beta_override, const MonodromyOptions& opt,
                                  std::optional<double> period) {
    const double beta = beta_override.value_or(p.beta);
    if (!std::isfinite(beta)) throw ValidationError("beta", "beta must be finite");
    if (kernel.j() != p.j || kernel.k() != p.k) throw ValidationError("j", "kernel and parameters disagree on j, k");
    const double tau = period ? *period : detect_period(p, kernel, q, opt.tol, opt.horizon_periods);
    MonodromyResult r = opt.precision == HillPrecision::binary128
                            ? monodromy_impl<__float128>(p, kernel, q, beta, opt, tau)
                            : opt.precision == HillPrecision::binary80
                                  ? monodromy_impl<long double>(p, kernel, q, beta, opt, tau)
                                  : monodromy_impl<double>(p, kernel, q, beta, opt, tau);
    if (!(r.det_drift <= opt.det_limit))
        throw DeterminantDriftError("monodromy determinant drifted from 1", r.det_drift);
    return r;
}

Mat2 hill_monodromy(const std::function<double(double)>& Q, double T, std::vector<double> breakpoints,
                    const Tolerances& tol) {
    std::vector<double> cuts{0.0};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double b : breakpoints)
        if (b > 0 && b < T) cuts.push_back(b);
    cuts.push_back(T);
    Vec<double, 4> y{1, 0, 0, 1};  // (v0, v1, v0', v1')
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1], pad = 1e-13 * (hi - lo);
        OrbitOptions o;
        o.tol = tol;
        o.stop = OrbitStop::time;
        o.t_end = hi - lo;
        // Q is sampled strictly inside the segment, so a jump at a breakpoint
        // is never read from the wrong side.
        auto rhs = [&](double t, const Vec<double, 4>& s, int, Vec<double, 4>& ds) {
            const double c = Q(std::clamp(lo + t, lo + pad, hi - pad));
            ds[0] = s[2];
            ds[1] = s[3];
            ds[2] = -c * s[0];
            ds[3] = -c * s[1];
        };
        y = integrate_orbit<double, 4>(rhs, y, o, [](double, const Vec<double, 4>&) {}).y;
    }
    return {y[0], y[1], y[2], y[3]};
}

}  // namespace fishbone
