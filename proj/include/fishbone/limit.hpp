#pragma once

// High-energy limit of the discriminant for odd j. As q grows the orbit
// spends half-periods pi/omega_+ (u > 0) and pi/omega_- (u < 0) with
//
//   omega_pm^2 = alpha j^4 + M (1 +- 1/j)
//   A_pm^2     = beta k^2 + gamma M (1 +- eps_jk)
//
// and the discriminant tends to the two-step value
//
//   D_inf / 2 = cos phi_+ cos phi_- - (a + 1/a)/2 sin phi_+ sin phi_-,
//
// phi_pm = pi A_pm / omega_pm, a = A_+ / A_-.

#include <optional>
#include <string_view>

#include "fishbone/params.hpp"
#include "fishbone/slackening.hpp"

namespace fishbone {

struct LimitQuantities {
    int j = 1, k = 1;
    double M = 0.0;
    double epsilon = 0.0;
    double omega_plus = 0.0, omega_minus = 0.0;
    double A_plus = 0.0, A_minus = 0.0;
    double phi_plus = 0.0, phi_minus = 0.0;
    double a = 0.0;
    double delta_inf = 0.0;
};

// Odd j only; even j raises UnsupportedModelError (see high_energy_verdict).
// Requires M > 0 and both squared frequencies positive (ValidationError).
LimitQuantities limit_quantities(const BridgeParams& p, double M);

double delta_infinity(const LimitQuantities& lq);

// pi / omega_+ + pi / omega_-
double limit_period(const LimitQuantities& lq);

enum class HighEnergyVerdict { unstable_at_high_energy, no_instability_predicted, even_j_always_stable };

std::string_view to_string(HighEnergyVerdict v);

struct HighEnergyReport {
    HighEnergyVerdict verdict;
    std::optional<LimitQuantities> limit;  // odd j
    // Even j: the decoupled limit frequencies sqrt(alpha j^4 + M) and
    // sqrt(beta k^2 + gamma M).
    double omega_even = 0.0;
    double A_even = 0.0;
};

// M comes from the model's asymptotic slope; a model without one raises
// UnsupportedModelError.
HighEnergyReport high_energy_verdict(const BridgeParams& p, const SlackeningModel& model);

}  // namespace fishbone
