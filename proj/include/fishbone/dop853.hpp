#pragma once

// Adaptive explicit Runge-Kutta integration with the Dormand-Prince 8(5,3)
// pair, plus an orbit driver that lands steps exactly on switching and
// period events.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fishbone/errors.hpp"

namespace fishbone {

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-12;
};

template <class Real, std::size_t N>
using Vec = std::array<Real, N>;

namespace dop853_coef {
inline constexpr long double c2 = 0.526001519587677318785587544488E-01L;
inline constexpr long double c3 = 0.789002279381515978178381316732E-01L;
inline constexpr long double c4 = 0.118350341907227396726757197510E+00L;
inline constexpr long double c5 = 0.281649658092772603273242802490E+00L;
inline constexpr long double c6 = 0.333333333333333333333333333333E+00L;
inline constexpr long double c7 = 0.25E+00L;
inline constexpr long double c8 = 0.307692307692307692307692307692E+00L;
inline constexpr long double c9 = 0.651282051282051282051282051282E+00L;
inline constexpr long double c10 = 0.6E+00L;
inline constexpr long double c11 = 0.857142857142857142857142857142E+00L;
inline constexpr long double b1 = 5.42937341165687622380535766363E-2L;
inline constexpr long double b6 = 4.45031289275240888144113950566E0L;
inline constexpr long double b7 = 1.89151789931450038304281599044E0L;
inline constexpr long double b8 = -5.8012039600105847814672114227E0L;
inline constexpr long double b9 = 3.1116436695781989440891606237E-1L;
inline constexpr long double b10 = -1.52160949662516078556178806805E-1L;
inline constexpr long double b11 = 2.01365400804030348374776537501E-1L;
inline constexpr long double b12 = 4.47106157277725905176885569043E-2L;
inline constexpr long double a21 = 5.26001519587677318785587544488E-2L;
inline constexpr long double a31 = 1.97250569845378994544595329183E-2L;
inline constexpr long double a32 = 5.91751709536136983633785987549E-2L;
inline constexpr long double a41 = 2.95875854768068491816892993775E-2L;
inline constexpr long double a43 = 8.87627564304205475450678981324E-2L;
inline constexpr long double a51 = 2.41365134159266685502369798665E-1L;
inline constexpr long double a53 = -8.84549479328286085344864962717E-1L;
inline constexpr long double a54 = 9.24834003261792003115737966543E-1L;
inline constexpr long double a61 = 3.7037037037037037037037037037E-2L;
inline constexpr long double a64 = 1.70828608729473871279604482173E-1L;
inline constexpr long double a65 = 1.25467687566822425016691814123E-1L;
inline constexpr long double a71 = 3.7109375E-2L;
inline constexpr long double a74 = 1.70252211019544039314978060272E-1L;
inline constexpr long double a75 = 6.02165389804559606850219397283E-2L;
inline constexpr long double a76 = -1.7578125E-2L;
inline constexpr long double a81 = 3.70920001185047927108779319836E-2L;
inline constexpr long double a84 = 1.70383925712239993810214054705E-1L;
inline constexpr long double a85 = 1.07262030446373284651809199168E-1L;
inline constexpr long double a86 = -1.53194377486244017527936158236E-2L;
inline constexpr long double a87 = 8.27378916381402288758473766002E-3L;
inline constexpr long double a91 = 6.24110958716075717114429577812E-1L;
inline constexpr long double a94 = -3.36089262944694129406857109825E0L;
inline constexpr long double a95 = -8.68219346841726006818189891453E-1L;
inline constexpr long double a96 = 2.75920996994467083049415600797E1L;
inline constexpr long double a97 = 2.01540675504778934086186788979E1L;
inline constexpr long double a98 = -4.34898841810699588477366255144E1L;
inline constexpr long double a101 = 4.77662536438264365890433908527E-1L;
inline constexpr long double a104 = -2.48811461997166764192642586468E0L;
inline constexpr long double a105 = -5.90290826836842996371446475743E-1L;
inline constexpr long double a106 = 2.12300514481811942347288949897E1L;
inline constexpr long double a107 = 1.52792336328824235832596922938E1L;
inline constexpr long double a108 = -3.32882109689848629194453265587E1L;
inline constexpr long double a109 = -2.03312017085086261358222928593E-2L;
inline constexpr long double a111 = -9.3714243008598732571704021658E-1L;
inline constexpr long double a114 = 5.18637242884406370830023853209E0L;
inline constexpr long double a115 = 1.09143734899672957818500254654E0L;
inline constexpr long double a116 = -8.14978701074692612513997267357E0L;
inline constexpr long double a117 = -1.85200656599969598641566180701E1L;
inline constexpr long double a118 = 2.27394870993505042818970056734E1L;
inline constexpr long double a119 = 2.49360555267965238987089396762E0L;
inline constexpr long double a1110 = -3.0467644718982195003823669022E0L;
inline constexpr long double a121 = 2.27331014751653820792359768449E0L;
inline constexpr long double a124 = -1.05344954667372501984066689879E1L;
inline constexpr long double a125 = -2.00087205822486249909675718444E0L;
inline constexpr long double a126 = -1.79589318631187989172765950534E1L;
inline constexpr long double a127 = 2.79488845294199600508499808837E1L;
inline constexpr long double a128 = -2.85899827713502369474065508674E0L;
inline constexpr long double a129 = -8.87285693353062954433549289258E0L;
inline constexpr long double a1210 = 1.23605671757943030647266201528E1L;
inline constexpr long double a1211 = 6.43392746015763530355970484046E-1L;
inline constexpr long double bhh1 = 0.244094488188976377952755905512E+00L;
inline constexpr long double bhh2 = 0.733846688281611857341361741547E+00L;
inline constexpr long double bhh3 = 0.220588235294117647058823529412E-01L;
inline constexpr long double er1 = 0.1312004499419488073250102996E-01L;
inline constexpr long double er6 = -0.1225156446376204440720569753E+01L;
inline constexpr long double er7 = -0.4957589496572501915214079952E+00L;
inline constexpr long double er8 = 0.1664377182454986536961530415E+01L;
inline constexpr long double er9 = -0.3503288487499736816886487290E+00L;
inline constexpr long double er10 = 0.3341791187130174790297318841E+00L;
inline constexpr long double er11 = 0.8192320648511571246570742613E-01L;
inline constexpr long double er12 = -0.2235530786388629525884427845E-01L;
}  // namespace dop853_coef

// One-step machinery of DOP853. Rhs is callable as rhs(t, y, dy).
template <class Real, std::size_t N, class Rhs>
class Dop853 {
public:
    using State = Vec<Real, N>;

    Dop853(Rhs rhs, Tolerances tol) : rhs_(std::move(rhs)), tol_(tol) {}

    void eval(Real t, const State& y, State& dy) { rhs_(t, y, dy); ++evaluations_; }

    // Advances (t, y) by h given f0 = rhs(t, y). Writes the eighth-order
    // solution to y1 and returns the scaled error norm (accept when <= 1).
    double step(Real t, const State& y, const State& f0, Real h, State& y1) {
        using namespace dop853_coef;
        const auto c = [](long double v) { return static_cast<Real>(v); };
        State k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, w;

        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * c(a21) * f0[i];
        eval(t + c(c2) * h, w, k2);
        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * (c(a31) * f0[i] + c(a32) * k2[i]);
        eval(t + c(c3) * h, w, k3);
        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * (c(a41) * f0[i] + c(a43) * k3[i]);
        eval(t + c(c4) * h, w, k4);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a51) * f0[i] + c(a53) * k3[i] + c(a54) * k4[i]);
        eval(t + c(c5) * h, w, k5);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a61) * f0[i] + c(a64) * k4[i] + c(a65) * k5[i]);
        eval(t + c(c6) * h, w, k6);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a71) * f0[i] + c(a74) * k4[i] + c(a75) * k5[i] + c(a76) * k6[i]);
        eval(t + c(c7) * h, w, k7);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a81) * f0[i] + c(a84) * k4[i] + c(a85) * k5[i] + c(a86) * k6[i] +
                               c(a87) * k7[i]);
        eval(t + c(c8) * h, w, k8);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a91) * f0[i] + c(a94) * k4[i] + c(a95) * k5[i] + c(a96) * k6[i] +
                               c(a97) * k7[i] + c(a98) * k8[i]);
        eval(t + c(c9) * h, w, k9);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a101) * f0[i] + c(a104) * k4[i] + c(a105) * k5[i] + c(a106) * k6[i] +
                               c(a107) * k7[i] + c(a108) * k8[i] + c(a109) * k9[i]);
        eval(t + c(c10) * h, w, k10);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a111) * f0[i] + c(a114) * k4[i] + c(a115) * k5[i] + c(a116) * k6[i] +
                               c(a117) * k7[i] + c(a118) * k8[i] + c(a119) * k9[i] + c(a1110) * k10[i]);
        eval(t + c(c11) * h, w, k11);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y[i] + h * (c(a121) * f0[i] + c(a124) * k4[i] + c(a125) * k5[i] + c(a126) * k6[i] +
                               c(a127) * k7[i] + c(a128) * k8[i] + c(a129) * k9[i] + c(a1210) * k10[i] +
                               c(a1211) * k11[i]);
        eval(t + h, w, k12);

        double err = 0.0, err2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const Real inc = c(b1) * f0[i] + c(b6) * k6[i] + c(b7) * k7[i] + c(b8) * k8[i] +
                             c(b9) * k9[i] + c(b10) * k10[i] + c(b11) * k11[i] + c(b12) * k12[i];
            y1[i] = y[i] + h * inc;
            const double scale = tol_.abs + tol_.rel * std::max(std::fabs(static_cast<double>(y[i])),
                                                                std::fabs(static_cast<double>(y1[i])));
            const double e2 = static_cast<double>(inc - c(bhh1) * f0[i] - c(bhh2) * k9[i] - c(bhh3) * k12[i]) / scale;
            const double e1 = static_cast<double>(c(er1) * f0[i] + c(er6) * k6[i] + c(er7) * k7[i] +
                                                  c(er8) * k8[i] + c(er9) * k9[i] + c(er10) * k10[i] +
                                                  c(er11) * k11[i] + c(er12) * k12[i]) /
                              scale;
            err += e1 * e1;
            err2 += e2 * e2;
        }
        const double deno = err + 0.01 * err2;
        const double habs = std::fabs(static_cast<double>(h));
        return habs * err * std::sqrt(1.0 / (deno <= 0.0 ? static_cast<double>(N) : deno * N));
    }

    // Starting step size (Hairer's HINIT heuristic, order 8).
    Real initial_step(Real t, const State& y, const State& f0, Real hmax) {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = tol_.abs + tol_.rel * std::fabs(static_cast<double>(y[i]));
            dnf += std::pow(static_cast<double>(f0[i]) / sk, 2);
            dny += std::pow(static_cast<double>(y[i]) / sk, 2);
        }
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, static_cast<double>(hmax));
        State y1, f1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + static_cast<Real>(h) * f0[i];
        eval(t + static_cast<Real>(h), y1, f1);
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = tol_.abs + tol_.rel * std::fabs(static_cast<double>(y[i]));
            der2 += std::pow(static_cast<double>(f1[i] - f0[i]) / sk, 2);
        }
        der2 = std::sqrt(der2) / h;
        const double der12 = std::max(std::fabs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::fabs(h) * 1e-3)
                                         : std::pow(0.01 / der12, 1.0 / 8.0);
        return static_cast<Real>(std::min({100.0 * std::fabs(h), h1, static_cast<double>(hmax)}));
    }

    const Tolerances& tolerances() const { return tol_; }
    long evaluations() const { return evaluations_; }

private:
    Rhs rhs_;
    Tolerances tol_;
    long evaluations_ = 0;
};

}  // namespace fishbone
