#pragma once

#include <vector>

namespace fishbone {

// The projected nonlinearities that drive one j-k mode pair:
//
//   flexural orbit   u'' + alpha j^4 u + 2 force(u) = 0
//   torsional Hill   v'' + (beta k^2 + 2 gamma coupling(u(t))) v = 0
//
// Kernels whose force or coupling change formula at isolated levels of u
// report them as switch points; integrators then evaluate each step on a
// fixed branch (branch b lies between switch_points()[b-1] and [b]).
class ModeKernel {
public:
    virtual ~ModeKernel() = default;

    virtual int j() const = 0;
    virtual int k() const = 0;

    virtual double force(double r) const = 0;
    virtual double coupling(double r) const = 0;
    // Antiderivative of force from 0 to r.
    virtual double potential(double r) const = 0;
    // force'(0); sets the small-amplitude frequency sqrt(alpha j^4 + 2 m).
    virtual double linear_slope() const = 0;

    virtual std::vector<double> switch_points() const { return {}; }
    virtual double force_on_branch(double r, int /*branch*/) const { return force(r); }
    virtual double coupling_on_branch(double r, int /*branch*/) const { return coupling(r); }
};

}  // namespace fishbone
