#pragma once

// Composite Gauss-Legendre quadrature for piecewise-smooth integrands.
// Known breakpoints split [a, b] into panels; each panel is bisected
// adaptively until a 16-point rule and its two-halves refinement agree.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "fishbone/errors.hpp"

namespace fishbone {

struct GaussRule {
    static constexpr int order = 16;
    std::array<double, order> nodes;    // on [-1, 1]
    std::array<double, order> weights;
};

const GaussRule& gauss_legendre_16();

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // sum of accepted panel error estimates
    int panels = 0;
    bool converged = true;
};

namespace detail {

template <class F>
double gauss_panel(const F& f, double a, double b) {
    const GaussRule& g = gauss_legendre_16();
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < GaussRule::order; ++i) s += g.weights[i] * f(c + hw * g.nodes[i]);
    return s * hw;
}

template <class F>
void adapt(const F& f, double a, double b, double whole, double tol, int depth, QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid);
    const double right = gauss_panel(f, mid, b);
    const double refined = left + right;
    const double err = std::fabs(refined - whole);
    if (err <= tol || depth >= 48 || mid <= a || mid >= b) {
        if (err > tol) out.converged = false;
        out.value += refined;
        out.error += err;
        ++out.panels;
        return;
    }
    adapt(f, a, mid, left, 0.5 * tol, depth + 1, out);
    adapt(f, mid, b, right, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

// Integrates f over [a, b] with panel edges at the given breakpoints (points
// outside (a, b) are ignored). The absolute tolerance is shared across
// panels in proportion to their length; a panel also passes when its error
// is below rel_tol times its magnitude.
template <class F>
QuadratureResult integrate_panels(const F& f, double a, double b, std::span<const double> breakpoints,
                                  double abs_tol, double rel_tol = 0.0) {
    QuadratureResult out;
    if (a == b) return out;
    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double length = b - a;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const double whole = detail::gauss_panel(f, lo, hi);
        const double tol = std::max(abs_tol * (hi - lo) / length, rel_tol * std::fabs(whole));
        detail::adapt(f, lo, hi, whole, tol, 0, out);
    }
    return out;
}

// As integrate_panels, but throws AccuracyError when a panel fails to reach
// its tolerance.
template <class F>
double integrate_checked(const F& f, double a, double b, std::span<const double> breakpoints, double abs_tol,
                         double rel_tol = 0.0) {
    const QuadratureResult r = integrate_panels(f, a, b, breakpoints, abs_tol, rel_tol);
    if (!r.converged) throw AccuracyError("quadrature did not reach tolerance", r.error);
    return r.value;
}

}  // namespace fishbone
