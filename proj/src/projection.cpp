#include "fishbone/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fishbone/errors.hpp"
#include "fishbone/quadrature.hpp"

namespace fishbone {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> with_mode_zeros(std::vector<double> pts, int n) {
    for (int i = 1; i < n; ++i) pts.push_back(i * pi / n);
    std::sort(pts.begin(), pts.end());
    return pts;
}

// Roots in (0, pi) of a(x) = level for each level, found by scanning a
// fine sample grid for sign changes and bisecting.
template <class A>
std::vector<double> level_crossings(const A& a, std::span<const double> levels, int samples) {
    std::vector<double> out;
    for (double level : levels) {
        double x0 = 0.0, g0 = a(0.0) - level;
        for (int i = 1; i <= samples; ++i) {
            const double x1 = pi * i / samples;
            const double g1 = a(x1) - level;
            if (g0 == 0.0 && i > 1) out.push_back(x0);
            if ((g0 < 0 && g1 > 0) || (g0 > 0 && g1 < 0)) {
                double lo = x0, hi = x1, glo = g0;
                for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = a(mid) - level;
                    if ((gm < 0) == (glo < 0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                out.push_back(0.5 * (lo + hi));
            }
            x0 = x1;
            g0 = g1;
        }
    }
    return out;
}

}  // namespace

std::vector<double> sine_breakpoints(double amplitude, int j, std::span<const double> levels) {
    std::vector<double> pts;
    if (amplitude != 0.0) {
        for (double level : levels) {
            const double c = level / amplitude;
            if (std::fabs(c) > 1.0) continue;
            const double a = std::asin(c);
            for (int n = -1; n <= j; ++n) {
                for (double phase : {a + 2 * pi * n, pi - a + 2 * pi * n}) {
                    const double x = phase / j;
                    if (x > 0.0 && x < pi) pts.push_back(x);
                }
            }
        }
    }
    return with_mode_zeros(std::move(pts), j);
}

double f_tilde(const SlackeningModel& model, double r, double quad_tol) {
    const auto bps = sine_breakpoints(r, 1, model.kinks());
    const auto integrand = [&](double x) {
        const double s = std::sin(x);
        return model.f(r * s) * s;
    };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, quad_tol * pi / 2.0);
}

double mmk_f_tilde(double m, double r0, double r) {
    if (r >= -r0) return m * r;
    const double ratio = r0 / r;
    return -2.0 / pi * m * r0 * (std::asin(ratio) / ratio + std::sqrt(1.0 - ratio * ratio));
}

int q_factor(int j, int k) { return k % j == 0 ? j : 0; }

double p_factor(int j, int k) {
    if (j % 2 == 0) return 0.0;
    return -std::tan(k * pi / j);
}

double mmk_H(int j, int k, double r0, double r) {
    if (std::fabs(r) <= r0) return pi / 2;
    const double theta = std::asin(r0 / std::fabs(r));
    const double arg = 2.0 * k * theta / j;
    double h = pi / 4 + theta / 2 - q_factor(j, k) / (4.0 * k) * std::sin(arg);
    if (j % 2 == 1) {
        const double sgn = r > 0 ? 1.0 : -1.0;
        h += sgn * (pi / (4.0 * j) - theta / (2.0 * j) + p_factor(j, k) / (4.0 * k) * std::cos(arg) +
                    std::sin(arg) / (4.0 * k));
    }
    return h;
}

double epsilon_jk(int j, int k) { return 1.0 / j - std::tan(pi * k / j) / (k * pi); }

double limit_h(int j, double M, double r) {
    if (j % 2 == 0) return 0.5 * M * r;
    const double sgn = r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
    return 0.5 * M * (1.0 + sgn / j) * r;
}

double limit_s(int j, int k, double M, double r) {
    if (j % 2 == 0) return 0.5 * M;
    const double sgn = r >= 0 ? 1.0 : -1.0;
    return 0.5 * M * (1.0 + sgn * epsilon_jk(j, k));
}

ProjectionKernel::ProjectionKernel(SlackeningModel model, int j, int k, ProjectionEngine engine,
                                   double quad_tol)
    : model_(std::move(model)), j_(j), k_(k), engine_(engine), quad_tol_(quad_tol) {
    if (j < 1) throw ValidationError("j", "j must be >= 1");
    if (k < 1) throw ValidationError("k", "k must be >= 1");
    if (!(quad_tol > 0)) throw ValidationError("quad_tol", "quadrature tolerance must be positive");
    if (engine == ProjectionEngine::closed_form && !std::holds_alternative<Mmk>(model_.variant()))
        throw ConfigError("closed-form projections exist only for the MMK law");
}

double ProjectionKernel::f_tilde(double r) const {
    if (engine_ == ProjectionEngine::closed_form) {
        const auto& p = std::get<Mmk>(model_.variant());
        return mmk_f_tilde(p.m, p.r0, r);
    }
    return fishbone::f_tilde(model_, r, quad_tol_);
}

double ProjectionKernel::f_j(double r) const {
    if (engine_ == ProjectionEngine::closed_form) return f_j_parity(r);
    return f_j_direct(r);
}

double ProjectionKernel::f_j_direct(double r) const {
    const auto bps = sine_breakpoints(r, j_, model_.kinks());
    const auto integrand = [&](double x) {
        const double s = std::sin(j_ * x);
        return model_.f(r * s) * s;
    };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, quad_tol_ * pi / 2.0);
}

double ProjectionKernel::f_j_parity(double r) const {
    const double plus = f_tilde(r), minus = f_tilde(-r);
    const double odd = 0.5 * (plus - minus);
    if (j_ % 2 == 0) return odd;
    return odd + 0.5 * (plus + minus) / j_;
}

double ProjectionKernel::g_jk(double r) const {
    if (engine_ == ProjectionEngine::closed_form) {
        const auto& p = std::get<Mmk>(model_.variant());
        return 2.0 * p.m / pi * mmk_H(j_, k_, p.r0, r);
    }
    const auto bps = sine_breakpoints(r, j_, model_.kinks());
    const auto integrand = [&](double x) {
        const double s = std::sin(k_ * x);
        return model_.fprime(r * std::sin(j_ * x)) * s * s;
    };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, quad_tol_ * pi / 2.0);
}

double ProjectionKernel::potential(double r) const {
    const auto bps = sine_breakpoints(r, j_, model_.kinks());
    const auto integrand = [&](double x) { return model_.primitive(r * std::sin(j_ * x)); };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, 1e-4 * quad_tol_, 1e-14);
}

std::vector<double> ProjectionKernel::switch_points() const {
    std::vector<double> pts;
    for (double c : model_.kinks()) {
        pts.push_back(std::fabs(c));
        pts.push_back(-std::fabs(c));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

std::vector<double> coupled_breakpoints(const SlackeningModel& model, int j, int k, double y, double z) {
    const int samples = 64 * std::max(j, k);
    const auto plus = [&](double x) { return y * std::sin(j * x) + z * std::sin(k * x); };
    const auto minus = [&](double x) { return y * std::sin(j * x) - z * std::sin(k * x); };
    auto pts = level_crossings(plus, model.kinks(), samples);
    auto more = level_crossings(minus, model.kinks(), samples);
    pts.insert(pts.end(), more.begin(), more.end());
    pts = with_mode_zeros(std::move(pts), j);
    return with_mode_zeros(std::move(pts), k);
}

}  // namespace

double ProjectionKernel::psi_1(double y, double z) const {
    const auto bps = coupled_breakpoints(model_, j_, k_, y, z);
    const auto integrand = [&](double x) {
        const double a = y * std::sin(j_ * x), b = z * std::sin(k_ * x);
        return (model_.f(a + b) + model_.f(a - b)) * std::sin(j_ * x);
    };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, quad_tol_ * pi / 2.0);
}

double ProjectionKernel::psi_2(double y, double z) const {
    const auto bps = coupled_breakpoints(model_, j_, k_, y, z);
    const auto integrand = [&](double x) {
        const double a = y * std::sin(j_ * x), b = z * std::sin(k_ * x);
        return (model_.f(a + b) - model_.f(a - b)) * std::sin(k_ * x);
    };
    return 2.0 / pi * integrate_checked(integrand, 0.0, pi, bps, quad_tol_ * pi / 2.0);
}

}  // namespace fishbone
