#pragma once

// The non-smooth approximation of the projected MMK force,
//
//   fbar_j(r) = m r                                     |r| <= rbar
//             = (m/2)(1 + e) r + (m/2)(1 - e) rbar      r > rbar
//             = (m/2)(1 - e) r - (m/2)(1 + e) rbar      r < -rbar
//
// with rbar = 4 r0 / pi and e = 1/j for odd j, 0 for even j. The orbit of
// u'' + alpha j^4 u + 2 fbar_j(u) = 0 is piecewise harmonic and the Hill
// equation for k = j has a piecewise-constant coefficient, so the Floquet
// discriminant is an exact product of transition matrices.

#include <array>

#include "fishbone/floquet.hpp"
#include "fishbone/kernel.hpp"
#include "fishbone/params.hpp"

namespace fishbone {

double r_bar(double r0);

double barf_j(int j, double m, double r0, double r);
// One-sided slope; the slope changes at +-rbar only.
double barf_j_slope(int j, double m, double r0, double r, Side side = Side::right);

enum class PiecewiseRegime { linear, even_j, odd_j };

// Steps of one period, starting where u = q turns around and split at the
// crossings of +-rbar: region 0 (u > rbar), 1 (|u| < rbar), 2 (u < -rbar).
// In the linear regime only index 1 is used and dt[1] is the full period.
struct PiecewiseSolution {
    double q = 0.0;
    PiecewiseRegime regime = PiecewiseRegime::linear;
    double rbar = 0.0;
    std::array<double, 3> omega{};  // flexural frequencies per region
    std::array<double, 3> dt{};     // time spent per visit of each region
    std::array<double, 3> hill_a2{};  // signed squared Hill frequencies
    double period = 0.0;
};

// Requires params.k == params.j (ConfigError otherwise); params.beta sets
// the Hill frequencies.
PiecewiseSolution barf_times(const BridgeParams& p, double m, double r0, double q);

// Time-ordered steps L0, L1, L2, L1 (odd j), L0, L1, L0, L1 (even j), or a
// single step in the linear regime.
StepPotential barf_steps(const PiecewiseSolution& s);

double barf_delta(const BridgeParams& p, double m, double r0, double q, double beta);

// fbar_j as a mode kernel with switch points at +-rbar; only k = j.
class BarKernel final : public ModeKernel {
public:
    BarKernel(int j, double m, double r0);

    int j() const override { return j_; }
    int k() const override { return j_; }
    double m() const { return m_; }
    double r0() const { return r0_; }
    double rbar() const { return rbar_; }

    double force(double r) const override;
    double coupling(double r) const override;
    double potential(double r) const override;
    double linear_slope() const override { return m_; }

    std::vector<double> switch_points() const override { return {-rbar_, rbar_}; }
    double force_on_branch(double r, int branch) const override;
    double coupling_on_branch(double r, int branch) const override;

private:
    int j_;
    double m_, r0_, rbar_, e_;
};

}  // namespace fishbone
