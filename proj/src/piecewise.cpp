#include "fishbone/piecewise.hpp"

#include <cmath>
#include <numbers>

#include "fishbone/errors.hpp"

namespace fishbone {

namespace {

constexpr double pi = std::numbers::pi;

double odd_inverse(int j) { return j % 2 == 1 ? 1.0 / j : 0.0; }

int branch_of(double r, double rbar) { return r < -rbar ? 0 : (r > rbar ? 2 : 1); }

double force_branch(double e, double m, double rbar, double r, int branch) {
    switch (branch) {
        case 0: return 0.5 * m * (1 - e) * r - 0.5 * m * (1 + e) * rbar;
        case 2: return 0.5 * m * (1 + e) * r + 0.5 * m * (1 - e) * rbar;
        default: return m * r;
    }
}

double slope_branch(double e, double m, int branch) {
    switch (branch) {
        case 0: return 0.5 * m * (1 - e);
        case 2: return 0.5 * m * (1 + e);
        default: return m;
    }
}

}  // namespace

double r_bar(double r0) { return 4.0 * r0 / pi; }

double barf_j(int j, double m, double r0, double r) {
    const double rb = r_bar(r0);
    return force_branch(odd_inverse(j), m, rb, r, branch_of(r, rb));
}

double barf_j_slope(int j, double m, double r0, double r, Side side) {
    const double rb = r_bar(r0);
    int b = branch_of(r, rb);
    if (r == rb) b = side == Side::right ? 2 : 1;
    if (r == -rb) b = side == Side::right ? 1 : 0;
    return slope_branch(odd_inverse(j), m, b);
}

PiecewiseSolution barf_times(const BridgeParams& p, double m, double r0, double q) {
    if (p.k != p.j) throw ConfigError("the closed-form discriminant exists only for k = j");
    if (!(q > 0)) throw ValidationError("q", "amplitude q must be positive");
    if (!(m > 0)) throw ValidationError("m", "m must be positive");
    if (!(r0 > 0)) throw ValidationError("r0", "r0 must be positive");
    const int j = p.j;
    const double aj = p.alpha * std::pow(static_cast<double>(j), 4);
    const double bj = p.beta * j * j;
    const double gm = p.gamma * m;

    PiecewiseSolution s;
    s.q = q;
    s.rbar = r_bar(r0);
    s.omega[1] = std::sqrt(aj + 2 * m);
    s.hill_a2[1] = bj + 2 * gm;
    if (q <= s.rbar) {
        s.regime = PiecewiseRegime::linear;
        s.dt[1] = 2 * pi / s.omega[1];
        s.period = s.dt[1];
        return s;
    }

    const double rb = s.rbar;
    const bool odd = j % 2 == 1;
    double D, E;
    if (odd) {
        s.regime = PiecewiseRegime::odd_j;
        s.omega[0] = std::sqrt(aj + m * (1 + 1.0 / j));
        s.omega[2] = std::sqrt(aj + m * (1 - 1.0 / j));
        s.hill_a2[0] = bj + gm * (1 + 1.0 / j);
        s.hill_a2[2] = bj + gm * (1 - 1.0 / j);
        D = m * (1 - 1.0 / j) * rb;
        E = m * (1 + 1.0 / j) * rb;
    } else {
        s.regime = PiecewiseRegime::even_j;
        s.omega[0] = s.omega[2] = std::sqrt(aj + m);
        s.hill_a2[0] = s.hill_a2[2] = bj + gm;
        D = E = m * rb;
    }
    const double w0 = s.omega[0], w1 = s.omega[1], w2 = s.omega[2];
    const double B = std::sqrt((q - rb) * (w0 * w0 * (q + rb) + 2 * D));
    s.dt[0] = 2 / w0 * std::acos((w0 * w0 * rb + D) / (w0 * w0 * q + D));
    s.dt[1] = 2 / w1 * std::atan(w1 * rb / B);
    s.dt[2] = odd ? 2 / w2 * std::atan(w2 * B / (w2 * w2 * rb + E)) : s.dt[0];
    if (!(s.dt[0] > 0) || !(s.dt[2] > 0)) {
        // q within round-off of rbar: the outer steps vanish, which is the
        // linear limit.
        s.regime = PiecewiseRegime::linear;
        s.omega[0] = s.omega[2] = 0;
        s.hill_a2[0] = s.hill_a2[2] = 0;
        s.dt = {0, 2 * pi / s.omega[1], 0};
        s.period = s.dt[1];
        return s;
    }
    s.period = s.dt[0] + 2 * s.dt[1] + s.dt[2];
    return s;
}

StepPotential barf_steps(const PiecewiseSolution& s) {
    if (s.regime == PiecewiseRegime::linear) return {{{s.hill_a2[1], s.dt[1]}}};
    return {{{s.hill_a2[0], s.dt[0]}, {s.hill_a2[1], s.dt[1]}, {s.hill_a2[2], s.dt[2]}, {s.hill_a2[1], s.dt[1]}}};
}

double barf_delta(const BridgeParams& p, double m, double r0, double q, double beta) {
    BridgeParams b = p;
    b.beta = beta;
    return meissner_discriminant(barf_steps(barf_times(b, m, r0, q))).delta;
}

BarKernel::BarKernel(int j, double m, double r0) : j_(j), m_(m), r0_(r0), rbar_(r_bar(r0)), e_(odd_inverse(j)) {
    if (j < 1) throw ValidationError("j", "j must be >= 1");
    if (!(m > 0)) throw ValidationError("m", "m must be positive");
    if (!(r0 > 0)) throw ValidationError("r0", "r0 must be positive");
}

double BarKernel::force(double r) const { return force_branch(e_, m_, rbar_, r, branch_of(r, rbar_)); }

double BarKernel::coupling(double r) const { return slope_branch(e_, m_, branch_of(r, rbar_)); }

double BarKernel::force_on_branch(double r, int branch) const { return force_branch(e_, m_, rbar_, r, branch); }

double BarKernel::coupling_on_branch(double, int branch) const { return slope_branch(e_, m_, branch); }

double BarKernel::potential(double r) const {
    const double lin = std::min(std::fabs(r), rbar_);
    double v = 0.5 * m_ * lin * lin;
    if (r > rbar_) {
        const double d = r - rbar_;
        v += m_ * rbar_ * d + 0.25 * m_ * (1 + e_) * d * d;
    } else if (r < -rbar_) {
        const double d = -rbar_ - r;
        v += m_ * rbar_ * d + 0.25 * m_ * (1 - e_) * d * d;
    }
    return v;
}

}  // namespace fishbone
