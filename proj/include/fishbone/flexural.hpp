#pragma once

// The pure flexural orbit u'' + alpha j^4 u + 2 f_j(u) = 0, u(0) = q,
// u'(0) = 0, over one period.

#include <vector>

#include "fishbone/dop853.hpp"
#include "fishbone/kernel.hpp"
#include "fishbone/params.hpp"

namespace fishbone {

struct OrbitSample {
    double t;
    double u;
    double du;
};

struct Trajectory {
    double q = 0.0;
    std::vector<OrbitSample> samples;  // t = 0 first, t = period last
    double period = 0.0;
    // max |E(t) - E(0)| / |E(0)| over the samples; NaN when not audited
    double energy_drift = 0.0;
    Tolerances tol;
    long steps = 0;

    // Cubic Hermite interpolation of u on [0, period].
    double u_at(double t) const;
};

struct FlexuralOptions {
    Tolerances tol;
    bool audit_energy = true;
    // Multiple of the small-amplitude period after which HorizonError is
    // raised.
    double horizon_periods = 10.0;
};

// 2 pi / sqrt(alpha j^4 + 2 m) with m = kernel.linear_slope().
double linear_period(const BridgeParams& p, const ModeKernel& kernel);

Trajectory solve_flexural(const BridgeParams& p, const ModeKernel& kernel, double q,
                          const FlexuralOptions& opt = {});

// Period only: first t > 0 where du/dt falls through zero.
double detect_period(const BridgeParams& p, const ModeKernel& kernel, double q, const Tolerances& tol = {},
                     double horizon_periods = 10.0);

// du^2/2 + alpha j^4 u^2 / 2 + 2 F_j(u), F_j the primitive of f_j.
double flexural_energy(const BridgeParams& p, const ModeKernel& kernel, double u, double du);

}  // namespace fishbone
