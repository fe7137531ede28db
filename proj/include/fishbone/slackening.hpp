#pragma once

// Restoring-force laws f(r) exerted by the hangers, and checks of the
// structural assumptions the stability analysis relies on:
//
//   S0  f continuous, monotone, f(0) = 0, piecewise C1 with kinks away
//       from zero, f'(0) > 0;
//   S1  f'(r) -> 0 as r -> -infinity (slack under compression);
//   S2  f'(r) -> M > 0 as r -> +infinity (asymptotically linear traction).

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fishbone {

enum class Side { left, right };

// f(r) = m [ (r + r0)^+ - r0 ]
struct Mmk {
    double m;
    double r0;
};

// f(r) = m r + sqrt((m r)^2 + h^2) - h
struct SqrtSmooth {
    double m;
    double h;
};

// f(r) = h (exp(m r / h) - 1)
struct Exponential {
    double m;
    double h;
};

struct Knot {
    double r;
    double f;
};

// Linear interpolation through the knots, extended beyond the end knots with
// the end-segment slopes.
struct PiecewiseLinear {
    std::vector<Knot> knots;
};

struct AssumptionReport {
    bool s0 = false;
    bool s1 = false;
    bool s2 = false;
    std::optional<double> M;  // asymptotic slope, present when s2 holds
};

class SlackeningModel {
public:
    using Variant = std::variant<Mmk, SqrtSmooth, Exponential, PiecewiseLinear>;

    static SlackeningModel mmk(double m, double r0);
    static SlackeningModel sqrt_smooth(double m, double h);
    static SlackeningModel exponential(double m, double h);
    // Throws ValidationError unless the knots are sorted, f is monotone,
    // f(0) = 0, f'(0) > 0 and no kink sits at zero.
    static SlackeningModel piecewise(std::vector<Knot> knots);

    double f(double r) const;
    // One-sided derivative; both sides agree away from kinks.
    double fprime(double r, Side side = Side::right) const;
    // F(r) = integral of f from 0 to r.
    double primitive(double r) const;

    double odd_part(double r) const { return 0.5 * (f(r) - f(-r)); }
    double even_part(double r) const { return 0.5 * (f(r) + f(-r)); }

    // Derivative discontinuities r_1 < ... < r_n (never containing 0).
    const std::vector<double>& kinks() const { return kinks_; }
    double slope_at_zero() const;
    std::optional<double> asymptotic_slope() const;
    AssumptionReport check_assumptions() const;

    const Variant& variant() const { return v_; }
    std::string name() const;

private:
    explicit SlackeningModel(Variant v);

    Variant v_;
    std::vector<double> kinks_;
};

}  // namespace fishbone
