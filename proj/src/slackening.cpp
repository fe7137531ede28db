#include "fishbone/slackening.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fishbone/errors.hpp"

namespace fishbone {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double segment_slope(const Knot& a, const Knot& b) { return (b.f - a.f) / (b.r - a.r); }

// Index of the segment [knots[i], knots[i+1]] used for r (end segments are
// extended to infinity).
std::size_t segment_of(const std::vector<Knot>& k, double r) {
    auto it = std::upper_bound(k.begin(), k.end(), r, [](double x, const Knot& n) { return x < n.r; });
    std::size_t i = static_cast<std::size_t>(it - k.begin());
    if (i == 0) return 0;
    return std::min(i - 1, k.size() - 2);
}

double pw_eval(const std::vector<Knot>& k, double r) {
    const std::size_t i = segment_of(k, r);
    return k[i].f + segment_slope(k[i], k[i + 1]) * (r - k[i].r);
}

double pw_slope(const std::vector<Knot>& k, double r, Side side) {
    // At a knot the left side belongs to the previous segment.
    std::size_t i = segment_of(k, r);
    if (side == Side::left && i > 0 && r == k[i].r) --i;
    return segment_slope(k[i], k[i + 1]);
}

double pw_primitive(const std::vector<Knot>& k, double r) {
    // Integrate piecewise from 0 to r; each piece is exact (trapezoid on a
    // linear function).
    const double lo = std::min(0.0, r), hi = std::max(0.0, r);
    std::vector<double> cuts{lo};
    for (const Knot& n : k)
        if (n.r > lo && n.r < hi) cuts.push_back(n.r);
    cuts.push_back(hi);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += 0.5 * (cuts[i + 1] - cuts[i]) * (pw_eval(k, cuts[i]) + pw_eval(k, cuts[i + 1]));
    return r >= 0 ? acc : -acc;
}

}  // namespace

SlackeningModel::SlackeningModel(Variant v) : v_(std::move(v)) {}

SlackeningModel SlackeningModel::mmk(double m, double r0) {
    if (!(m > 0)) throw ValidationError("m", "m must be positive");
    if (!(r0 > 0)) throw ValidationError("r0", "r0 must be positive (the kink -r0 may not sit at zero)");
    SlackeningModel s(Mmk{m, r0});
    s.kinks_ = {-r0};
    return s;
}

SlackeningModel SlackeningModel::sqrt_smooth(double m, double h) {
    if (!(m > 0)) throw ValidationError("m", "m must be positive");
    if (!(h > 0)) throw ValidationError("h", "h must be positive");
    return SlackeningModel(SqrtSmooth{m, h});
}

SlackeningModel SlackeningModel::exponential(double m, double h) {
    if (!(m > 0)) throw ValidationError("m", "m must be positive");
    if (!(h > 0)) throw ValidationError("h", "h must be positive");
    return SlackeningModel(Exponential{m, h});
}

SlackeningModel SlackeningModel::piecewise(std::vector<Knot> knots) {
    if (knots.size() < 2) throw ValidationError("knots", "piecewise model needs at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i + 1].r > knots[i].r))
            throw ValidationError("knots", "knot abscissae must be strictly increasing");
        if (knots[i + 1].f < knots[i].f) throw ValidationError("knots", "knot values must be monotone");
    }
    if (std::fabs(pw_eval(knots, 0.0)) > 1e-14 * (1.0 + std::fabs(knots.front().f) + std::fabs(knots.back().f)))
        throw ValidationError("knots", "piecewise model must satisfy f(0) = 0");

    SlackeningModel s(PiecewiseLinear{knots});
    for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
        const double left = segment_slope(knots[i - 1], knots[i]);
        const double right = segment_slope(knots[i], knots[i + 1]);
        if (left == right) continue;
        if (knots[i].r == 0.0) throw ValidationError("knots", "a kink may not sit at r = 0");
        s.kinks_.push_back(knots[i].r);
    }
    if (!(s.slope_at_zero() > 0)) throw ValidationError("knots", "slope at r = 0 must be positive");
    return s;
}

double SlackeningModel::f(double r) const {
    return std::visit(overloaded{
                          [r](const Mmk& p) { return p.m * (std::max(r + p.r0, 0.0) - p.r0); },
                          [r](const SqrtSmooth& p) { return p.m * r + std::hypot(p.m * r, p.h) - p.h; },
                          [r](const Exponential& p) { return p.h * std::expm1(p.m * r / p.h); },
                          [r](const PiecewiseLinear& p) { return pw_eval(p.knots, r); },
                      },
                      v_);
}

double SlackeningModel::fprime(double r, Side side) const {
    return std::visit(overloaded{
                          [&](const Mmk& p) {
                              if (r > -p.r0) return p.m;
                              if (r < -p.r0) return 0.0;
                              return side == Side::right ? p.m : 0.0;
                          },
                          [r](const SqrtSmooth& p) { return p.m + p.m * p.m * r / std::hypot(p.m * r, p.h); },
                          [r](const Exponential& p) { return p.m * std::exp(p.m * r / p.h); },
                          [&](const PiecewiseLinear& p) { return pw_slope(p.knots, r, side); },
                      },
                      v_);
}

double SlackeningModel::primitive(double r) const {
    return std::visit(overloaded{
                          [r](const Mmk& p) {
                              if (r >= -p.r0) return 0.5 * p.m * r * r;
                              return -p.m * p.r0 * r - 0.5 * p.m * p.r0 * p.r0;
                          },
                          [r](const SqrtSmooth& p) {
                              const double mr = p.m * r;
                              return 0.5 * p.m * r * r - p.h * r +
                                     0.5 * (r * std::hypot(mr, p.h) + p.h * p.h / p.m * std::asinh(mr / p.h));
                          },
                          [r](const Exponential& p) {
                              return p.h * p.h / p.m * std::expm1(p.m * r / p.h) - p.h * r;
                          },
                          [r](const PiecewiseLinear& p) { return pw_primitive(p.knots, r); },
                      },
                      v_);
}

double SlackeningModel::slope_at_zero() const {
    if (const auto* p = std::get_if<PiecewiseLinear>(&v_)) return pw_slope(p->knots, 0.0, Side::right);
    return fprime(0.0);
}

std::optional<double> SlackeningModel::asymptotic_slope() const {
    return std::visit(overloaded{
                          [](const Mmk& p) -> std::optional<double> { return p.m; },
                          [](const SqrtSmooth& p) -> std::optional<double> { return 2.0 * p.m; },
                          [](const Exponential&) -> std::optional<double> { return std::nullopt; },
                          [](const PiecewiseLinear& p) -> std::optional<double> {
                              const auto& k = p.knots;
                              const double s = segment_slope(k[k.size() - 2], k.back());
                              if (s > 0) return s;
                              return std::nullopt;
                          },
                      },
                      v_);
}

AssumptionReport SlackeningModel::check_assumptions() const {
    AssumptionReport rep;
    // Constructors already enforce S0 for every variant.
    rep.s0 = true;
    rep.s1 = std::visit(overloaded{
                            [](const Mmk&) { return true; },
                            [](const SqrtSmooth&) { return true; },
                            [](const Exponential&) { return true; },
                            [](const PiecewiseLinear& p) { return segment_slope(p.knots[0], p.knots[1]) == 0.0; },
                        },
                        v_);
    rep.M = asymptotic_slope();
    rep.s2 = rep.M.has_value();
    return rep;
}

std::string SlackeningModel::name() const {
    return std::visit(overloaded{
                          [](const Mmk&) { return std::string("mmk"); },
                          [](const SqrtSmooth&) { return std::string("sqrt"); },
                          [](const Exponential&) { return std::string("exp"); },
                          [](const PiecewiseLinear&) { return std::string("piecewise"); },
                      },
                      v_);
}

}  // namespace fishbone
