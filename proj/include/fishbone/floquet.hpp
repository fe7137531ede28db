#pragma once

// Floquet discriminant of the torsional Hill equation
//
//   v'' + (beta k^2 + 2 gamma g_jk(u(t))) v = 0
//
// over one period of the flexural orbit, and exact transition-matrix
// products for piecewise-constant (Meissner) coefficients.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fishbone/dop853.hpp"
#include "fishbone/flexural.hpp"
#include "fishbone/kernel.hpp"
#include "fishbone/params.hpp"

namespace fishbone {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);

// One constant-coefficient step v'' + a2 v = 0 held for dt. a2 is the
// signed squared frequency; a2 < 0 gives a hyperbolic block.
struct Step {
    double a2;
    double dt;

    static Step with_frequency(double A, double dt) { return {A * A, dt}; }
};

struct StepPotential {
    std::vector<Step> steps;  // in time order

    // Throws ValidationError unless non-empty with positive finite durations.
    void validate() const;
    double period() const;
};

// Maps (v, v') at the start of a step to the end.
Mat2 transition_matrix(const Step& s);

struct MeissnerResult {
    Mat2 monodromy;
    double delta;
};

// M = L_n ... L_1 L_0 with L_0 the first step in time.
MeissnerResult meissner_discriminant(const StepPotential& pot);

enum class StabilityClass { stable, unstable, boundary_periodic, boundary_antiperiodic, failed };

std::string_view to_string(StabilityClass c);

struct StabilityVerdict {
    double delta;
    StabilityClass cls;
    double tol;
};

inline constexpr double kDefaultClassTol = 1e-9;

// |delta| > 2 + tol unstable, |delta| < 2 - tol stable, otherwise the
// boundary on the side of delta's sign. A non-finite delta is failed.
StabilityVerdict classify(double delta, double tol = kDefaultClassTol);

// Arithmetic of the augmented integration. The determinant of a monodromy
// with entries of size X loses about X^2 units of round-off, so large |delta|
// needs more than double precision.
enum class HillPrecision { binary64, binary80, binary128 };

struct MonodromyOptions {
    Tolerances tol;
    // Raise DeterminantDriftError when |det M - 1| exceeds this.
    double det_limit = 1e-6;
    double horizon_periods = 10.0;
    HillPrecision precision = HillPrecision::binary128;
};

struct MonodromyResult {
    Mat2 monodromy;
    StabilityVerdict verdict;
    double period;
    double det_drift;
    // u(tau) - q and u'(tau) of the augmented run
    double closure_u;
    double closure_du;
};

// Integrates (u, u', v0, v0', v1, v1') over one period of the flexural orbit.
// The period is that of solve_flexural; pass it to skip the period search.
MonodromyResult monodromy_numeric(const BridgeParams& p, const ModeKernel& kernel, double q,
                                  std::optional<double> beta_override = std::nullopt,
                                  const MonodromyOptions& opt = {}, std::optional<double> period = std::nullopt);

// Monodromy of v'' + Q(t) v = 0 over [0, T], where Q is smooth between the
// given breakpoints; integrated numerically segment by segment.
Mat2 hill_monodromy(const std::function<double(double)>& Q, double T, std::vector<double> breakpoints,
                    const Tolerances& tol = {});

}  // namespace fishbone
