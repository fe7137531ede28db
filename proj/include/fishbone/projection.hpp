#pragma once

// Galerkin projections of a restoring force onto the sine modes sin(jx),
// sin(kx) on [0, pi]:
//
//   f~(r)     = 2/pi int f(r sin x) sin x dx
//   f_j(r)    = 2/pi int f(r sin jx) sin jx dx   = f~_o + [j odd] f~_e / j
//   g_jk(r)   = 2/pi int f'(r sin jx) sin^2 kx dx
//   psi_1/2   the two coupling integrals of the j-k mode pair
//
// Integrals are evaluated by composite Gauss-Legendre quadrature split at
// every preimage of a kink, or for the MMK law by closed forms.

#include <span>
#include <vector>

#include "fishbone/kernel.hpp"
#include "fishbone/slackening.hpp"

namespace fishbone {

enum class ProjectionEngine { quadrature, closed_form };

inline constexpr double kDefaultQuadTol = 1e-10;

// Points x in (0, pi) where amplitude * sin(j x) equals one of the levels,
// together with the interior zeros x = n pi / j.
std::vector<double> sine_breakpoints(double amplitude, int j, std::span<const double> levels);

double f_tilde(const SlackeningModel& model, double r, double quad_tol = kDefaultQuadTol);
// Closed form of f~ for the MMK law.
double mmk_f_tilde(double m, double r0, double r);

// sum_{n=1}^{j} cos(2 k n pi / j): j when j divides k, else 0.
int q_factor(int j, int k);
// sum_{n=1}^{j} (-1)^n sin(2 k n pi / j): 0 for even j, -tan(k pi / j) for odd j.
double p_factor(int j, int k);

// H_jk(r) = int_0^pi Heaviside(r sin jx + r0) sin^2 kx dx, in closed form.
// g_jk = (2m/pi) H_jk for the MMK law; r0 = 0 gives the high-energy limit.
double mmk_H(int j, int k, double r0, double r);

// eps_jk = 1/j - tan(pi k / j) / (k pi); only meaningful for odd j.
double epsilon_jk(int j, int k);

// High-energy limit functions h_j(r) and s_jk(r) for asymptotic slope M.
// For odd j, s_jk jumps at r = 0; the value at r = 0 is the r > 0 branch.
double limit_h(int j, double M, double r);
double limit_s(int j, int k, double M, double r);

class ProjectionKernel final : public ModeKernel {
public:
    // closed_form requires the MMK law (ConfigError otherwise).
    ProjectionKernel(SlackeningModel model, int j, int k,
                     ProjectionEngine engine = ProjectionEngine::quadrature,
                     double quad_tol = kDefaultQuadTol);

    const SlackeningModel& model() const { return model_; }
    ProjectionEngine engine() const { return engine_; }
    double quad_tol() const { return quad_tol_; }

    double f_tilde(double r) const;
    double f_j(double r) const;
    // Direct quadrature of the f_j integral.
    double f_j_direct(double r) const;
    // f~_o + f~_e / j (odd j) or f~_o (even j), with f~ from the engine.
    double f_j_parity(double r) const;
    double g_jk(double r) const;
    double psi_1(double y, double z) const;
    double psi_2(double y, double z) const;

    int j() const override { return j_; }
    int k() const override { return k_; }
    double force(double r) const override { return f_j(r); }
    double coupling(double r) const override { return g_jk(r); }
    // 2/pi int F(r sin jx) dx with F the primitive of f.
    double potential(double r) const override;
    double linear_slope() const override { return model_.slope_at_zero(); }
    // +-|c| for each kink level c: r sin(jx) first reaches c at |r| = |c|,
    // where the projections lose smoothness.
    std::vector<double> switch_points() const override;

private:
    SlackeningModel model_;
    int j_, k_;
    ProjectionEngine engine_;
    double quad_tol_;
};

}  // namespace fishbone
