#include "fishbone/limit.hpp"

#include <cmath>
#include <numbers>

#include "fishbone/errors.hpp"
#include "fishbone/projection.hpp"

namespace fishbone {

namespace {
constexpr double pi = std::numbers::pi;
}

LimitQuantities limit_quantities(const BridgeParams& p, double M) {
    if (p.j % 2 == 0)
        throw UnsupportedModelError("the high-energy limit discriminant needs odd j; even j is always stable");
    if (!(M > 0) || !std::isfinite(M)) throw ValidationError("M", "asymptotic slope M must be positive");
    LimitQuantities lq;
    lq.j = p.j;
    lq.k = p.k;
    lq.M = M;
    lq.epsilon = epsilon_jk(p.j, p.k);
    const double aj = p.alpha * std::pow(static_cast<double>(p.j), 4);
    const double wp2 = aj + M * (1 + 1.0 / p.j), wm2 = aj + M * (1 - 1.0 / p.j);
    const double bk = p.beta * p.k * p.k;
    const double ap2 = bk + p.gamma * M * (1 + lq.epsilon), am2 = bk + p.gamma * M * (1 - lq.epsilon);
    if (!(wp2 > 0) || !(wm2 > 0)) throw ValidationError("alpha", "limit flexural frequencies must be real");
    if (!(ap2 > 0) || !(am2 > 0))
        throw ValidationError("beta", "limit torsional frequencies A+-^2 must be positive");
    lq.omega_plus = std::sqrt(wp2);
    lq.omega_minus = std::sqrt(wm2);
    lq.A_plus = std::sqrt(ap2);
    lq.A_minus = std::sqrt(am2);
    lq.phi_plus = pi * lq.A_plus / lq.omega_plus;
    lq.phi_minus = pi * lq.A_minus / lq.omega_minus;
    lq.a = lq.A_plus / lq.A_minus;
    lq.delta_inf = delta_infinity(lq);
    return lq;
}

double delta_infinity(const LimitQuantities& lq) {
    const double half = std::cos(lq.phi_plus) * std::cos(lq.phi_minus) -
                        0.5 * (lq.a + 1 / lq.a) * std::sin(lq.phi_plus) * std::sin(lq.phi_minus);
    return 2 * half;
}

double limit_period(const LimitQuantities& lq) { return pi / lq.omega_plus + pi / lq.omega_minus; }

std::string_view to_string(HighEnergyVerdict v) {
    switch (v) {
        case HighEnergyVerdict::unstable_at_high_energy: return "unstable_at_high_energy";
        case HighEnergyVerdict::no_instability_predicted: return "no_instability_predicted";
        case HighEnergyVerdict::even_j_always_stable: return "even_j_always_stable";
    }
    return "?";
}

HighEnergyReport high_energy_verdict(const BridgeParams& p, const SlackeningModel& model) {
    const AssumptionReport rep = model.check_assumptions();
    if (!rep.s2 || !rep.M)
        throw UnsupportedModelError("model " + model.name() +
                                    " has no asymptotic traction slope (S2 fails); the high-energy limit is undefined");
    if (!rep.s0 || !rep.s1)
        throw UnsupportedModelError("model " + model.name() + " violates the slackening assumptions S0/S1");
    const double M = *rep.M;
    HighEnergyReport r;
    if (p.j % 2 == 0) {
        r.verdict = HighEnergyVerdict::even_j_always_stable;
        r.omega_even = std::sqrt(p.alpha * std::pow(static_cast<double>(p.j), 4) + M);
        r.A_even = std::sqrt(p.beta * p.k * p.k + p.gamma * M);
        return r;
    }
    r.limit = limit_quantities(p, M);
    r.verdict = std::fabs(r.limit->delta_inf) > 2 ? HighEnergyVerdict::unstable_at_high_energy
                                                  : HighEnergyVerdict::no_instability_predicted;
    return r;
}

}  // namespace fishbone
