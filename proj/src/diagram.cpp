#include "fishbone/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "fishbone/errors.hpp"
#include "fishbone/piecewise.hpp"
#include "fishbone/projection.hpp"

namespace fishbone {

namespace {
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view to_string(Engine e) { return e == Engine::numeric ? "numeric" : "closed-form"; }

Engine parse_engine(std::string_view s) {
    if (s == "numeric") return Engine::numeric;
    if (s == "closed-form" || s == "closed_form") return Engine::closed_form;
    throw SchemaError("engine", "engine must be numeric or closed-form (got '" + std::string(s) + "')");
}

double Axis::at(int i) const {
    if (n <= 1) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * i / (n - 1);
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = at(i);
    return v;
}

Axis parse_axis(std::string_view text, const std::string& flag) {
    const auto bad = [&] { return SchemaError(flag, flag + ": expected a:b:n, got '" + std::string(text) + "'"); };
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos) throw bad();
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw bad();
    const auto num = [&](std::string_view s, auto& out) {
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || p != s.data() + s.size()) throw bad();
    };
    Axis a;
    num(text.substr(0, c1), a.lo);
    num(text.substr(c1 + 1, c2 - c1 - 1), a.hi);
    num(text.substr(c2 + 1), a.n);
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) throw bad();
    if (a.n < 1) throw ValidationError(flag, flag + ": need at least one point");
    if (a.n > 1 && !(a.hi > a.lo)) throw ValidationError(flag, flag + ": range must be increasing");
    return a;
}

std::unique_ptr<ModeKernel> make_kernel(const ModelSpec& model, int j, int k) {
    switch (model.kind) {
        case ModelKind::mmkbar:
            if (k != j) throw ConfigError("the mmkbar model has a Hill coefficient only for k = j");
            return std::make_unique<BarKernel>(j, model.m, model.r0);
        case ModelKind::mmk:
            return std::make_unique<ProjectionKernel>(model.slackening(), j, k, ProjectionEngine::closed_form);
        default: return std::make_unique<ProjectionKernel>(model.slackening(), j, k, ProjectionEngine::quadrature);
    }
}

std::size_t StabilityGrid::failures() const {
    return static_cast<std::size_t>(std::count(cls.begin(), cls.end(), StabilityClass::failed));
}

StabilityGrid sweep_grid(const RunConfig& cfg, const Axis& q, const Axis& beta, const SweepOptions& opt) {
    if (q.n < 1 || beta.n < 1) throw ValidationError("range", "empty grid");
    if (!(q.lo > 0)) throw ValidationError("q-range", "amplitudes q must be positive");
    if (opt.jobs < 1) throw ValidationError("jobs", "jobs must be >= 1");
    if (!(opt.class_tol > 0)) throw ValidationError("tol-class", "classification tolerance must be positive");
    const BridgeParams& p = cfg.params;
    if (opt.engine == Engine::closed_form) {
        if (cfg.model.kind != ModelKind::mmkbar)
            throw ConfigError("the closed-form engine needs model = mmkbar");
        if (p.j != p.k) throw ConfigError("the closed-form engine needs k = j");
    }
    std::unique_ptr<ModeKernel> kernel;
    if (opt.engine == Engine::numeric) kernel = make_kernel(cfg.model, p.j, p.k);

    StabilityGrid g;
    g.q_axis = q.values();
    g.beta_axis = beta.values();
    const std::size_t cells = g.nq() * g.nbeta();
    g.delta.assign(cells, nan);
    g.cls.assign(cells, StabilityClass::failed);
    g.det_drift.assign(cells, nan);
    g.errors.assign(cells, {});
    g.meta = {p, cfg.model, opt.engine, opt.tol, opt.class_tol, 0.0, cfg.beta_reference};

    const auto t0 = std::chrono::steady_clock::now();
    MonodromyOptions mopt;
    mopt.tol = opt.tol;

    auto fail = [&](std::size_t idx, const std::string& what) {
        g.delta[idx] = nan;
        g.cls[idx] = StabilityClass::failed;
        g.errors[idx] = what;
    };

    auto column = [&](std::size_t iq) {
        const double qv = g.q_axis[iq];
        std::optional<double> period;
        std::string column_error;
        if (opt.engine == Engine::numeric && opt.cache_columns) {
            try {
                period = detect_period(p, *kernel, qv, opt.tol, mopt.horizon_periods);
            } catch (const NumericalError& e) {
                column_error = e.what();
            }
        }
        for (std::size_t ib = 0; ib < g.nbeta(); ++ib) {
            const std::size_t idx = g.index(ib, iq);
            const double bv = g.beta_axis[ib];
            if (!column_error.empty()) {
                fail(idx, column_error);
                continue;
            }
            try {
                double d;
                if (opt.engine == Engine::closed_form) {
                    d = barf_delta(p, cfg.model.m, cfg.model.r0, qv, bv);
                } else {
                    const MonodromyResult r = monodromy_numeric(p, *kernel, qv, bv, mopt, period);
                    d = r.verdict.delta;
                    g.det_drift[idx] = r.det_drift;
                }
                g.delta[idx] = d;
                g.cls[idx] = classify(d, opt.class_tol).cls;
                if (g.cls[idx] == StabilityClass::failed) g.errors[idx] = "non-finite discriminant";
            } catch (const NumericalError& e) {
                fail(idx, e.what());
            }
        }
    };

    const int workers = std::min<int>(opt.jobs, static_cast<int>(g.nq()));
    if (workers <= 1) {
        for (std::size_t iq = 0; iq < g.nq(); ++iq) column(iq);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t iq; (iq = next.fetch_add(1)) < g.nq();) column(iq);
            });
        for (auto& t : pool) t.join();
    }
    g.meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return g;
}

std::vector<TongueTip> tongue_tips(const BridgeParams& p, double m, int n_max) {
    if (n_max < 1) throw ValidationError("N", "N_max must be >= 1");
    const double w2 = p.alpha * std::pow(static_cast<double>(p.j), 4) + 2 * m;
    const double k2 = static_cast<double>(p.k) * p.k;
    std::vector<TongueTip> tips;
    for (int N = 1; N <= n_max; ++N)
        tips.push_back({N, w2 * N * N / (4 * k2) - 2 * p.gamma * m / k2, p.j % 2 == 0 && N % 2 == 1});
    return tips;
}

std::vector<std::pair<double, double>> unstable_bands(const StabilityGrid& grid, std::size_t iq) {
    std::vector<std::pair<double, double>> out;
    std::size_t ib = 0;
    while (ib < grid.nbeta()) {
        if (grid.cls[grid.index(ib, iq)] != StabilityClass::unstable) {
            ++ib;
            continue;
        }
        const std::size_t start = ib;
        while (ib < grid.nbeta() && grid.cls[grid.index(ib, iq)] == StabilityClass::unstable) ++ib;
        out.emplace_back(grid.beta_axis[start], grid.beta_axis[ib - 1]);
    }
    return out;
}

std::vector<DetectedTip> detect_tips(const StabilityGrid& grid) {
    std::vector<DetectedTip> tips;
    std::vector<std::pair<double, double>> prev;
    const double cell = grid.nbeta() > 1 ? grid.beta_axis[1] - grid.beta_axis[0] : 0.0;
    for (std::size_t iq = 0; iq < grid.nq(); ++iq) {
        const auto bands = unstable_bands(grid, iq);
        for (const auto& [lo, hi] : bands) {
            const bool continues = std::any_of(prev.begin(), prev.end(), [&](const auto& b) {
                return b.first <= hi + 0.5 * cell && lo <= b.second + 0.5 * cell;
            });
            if (!continues) tips.push_back({grid.q_axis[iq], 0.5 * (lo + hi), lo, hi});
        }
        prev = bands;
    }
    return tips;
}

void write_csv(const StabilityGrid& grid, std::ostream& out) {
    out << "q,beta,delta,class\n";
    for (std::size_t ib = 0; ib < grid.nbeta(); ++ib)
        for (std::size_t iq = 0; iq < grid.nq(); ++iq) {
            const std::size_t i = grid.index(ib, iq);
            out << format_double(grid.q_axis[iq]) << ',' << format_double(grid.beta_axis[ib]) << ','
                << format_double(grid.delta[i]) << ',' << to_string(grid.cls[i]) << '\n';
        }
}

void write_pgm(const StabilityGrid& grid, std::ostream& out) {
    out << "P2\n" << grid.nq() << ' ' << grid.nbeta() << "\n255\n";
    for (std::size_t r = 0; r < grid.nbeta(); ++r) {
        const std::size_t ib = grid.nbeta() - 1 - r;
        for (std::size_t iq = 0; iq < grid.nq(); ++iq) {
            const std::size_t i = grid.index(ib, iq);
            int tone = 255;
            if (grid.cls[i] == StabilityClass::failed)
                tone = 0;
            else if (grid.delta[i] > 2)
                tone = 192;
            else if (grid.delta[i] < -2)
                tone = 96;
            out << (iq ? " " : "") << tone;
        }
        out << '\n';
    }
}

void write_json_summary(const StabilityGrid& grid, std::ostream& out, int n_tips) {
    using nlohmann::json;
    const GridMeta& m = grid.meta;
    json j;
    j["params"] = {{"alpha", m.params.alpha}, {"gamma", m.params.gamma}, {"j", m.params.j}, {"k", m.params.k}};
    j["model"] = {{"kind", to_string(m.model.kind)}, {"m", m.model.m}};
    if (m.model.kind == ModelKind::mmk || m.model.kind == ModelKind::mmkbar) j["model"]["r0"] = m.model.r0;
    if (m.model.kind == ModelKind::sqrt || m.model.kind == ModelKind::exp) j["model"]["h"] = m.model.h;
    j["engine"] = to_string(m.engine);
    j["tolerances"] = {{"rel", m.tol.rel}, {"abs", m.tol.abs}, {"class", m.class_tol}};
    j["wall_seconds"] = m.wall_seconds;
    j["grid"] = {{"nq", grid.nq()},
                 {"nbeta", grid.nbeta()},
                 {"q", {grid.q_axis.front(), grid.q_axis.back()}},
                 {"beta", {grid.beta_axis.front(), grid.beta_axis.back()}}};
    std::map<std::string, std::size_t> counts;
    for (StabilityClass c : grid.cls) ++counts[std::string(to_string(c))];
    j["classes"] = counts;
    j["failures"] = grid.failures();
    if (m.beta_reference) j["beta_reference"] = *m.beta_reference;

    json predicted = json::array();
    for (const TongueTip& t : tongue_tips(m.params, m.model.m, n_tips))
        predicted.push_back({{"N", t.N}, {"beta", t.beta}, {"vanished", t.vanished}});
    j["tongue_tips"] = predicted;
    json detected = json::array();
    for (const DetectedTip& t : detect_tips(grid))
        detected.push_back({{"q", t.q}, {"beta", t.beta}, {"beta_lo", t.beta_lo}, {"beta_hi", t.beta_hi}});
    j["detected_tips"] = detected;
    out << j.dump(2) << '\n';
}

ExportFormat parse_format(std::string_view s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "pgm") return ExportFormat::pgm;
    if (s == "json") return ExportFormat::json;
    throw SchemaError("format", "format must be csv, pgm or json (got '" + std::string(s) + "')");
}

void export_grid(const StabilityGrid& grid, ExportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    switch (format) {
        case ExportFormat::csv: write_csv(grid, out); break;
        case ExportFormat::pgm: write_pgm(grid, out); break;
        case ExportFormat::json: write_json_summary(grid, out); break;
    }
    out.flush();
    if (!out) throw ConfigError("write to " + path + " failed");
}

EngineComparison compare_engines(const RunConfig& cfg, const Axis& q, const Axis& beta, SweepOptions opt) {
    if (cfg.model.kind != ModelKind::mmkbar) throw ConfigError("engine comparison needs model = mmkbar");
    if (cfg.params.j != cfg.params.k) throw ConfigError("engine comparison needs k = j");
    opt.engine = Engine::closed_form;
    const StabilityGrid closed = sweep_grid(cfg, q, beta, opt);
    opt.engine = Engine::numeric;
    const StabilityGrid numeric = sweep_grid(cfg, q, beta, opt);
    EngineComparison c;
    c.cells = closed.delta.size();
    for (std::size_t i = 0; i < c.cells; ++i) {
        if (numeric.cls[i] == StabilityClass::failed || closed.cls[i] == StabilityClass::failed) {
            ++c.failures;
            continue;
        }
        const double d = std::fabs(numeric.delta[i] - closed.delta[i]);
        if (d >= c.max_abs) {
            c.max_abs = d;
            c.q = closed.q_axis[i % closed.nq()];
            c.beta = closed.beta_axis[i / closed.nq()];
        }
        c.max_det_drift = std::max(c.max_det_drift, numeric.det_drift[i]);
    }
    return c;
}

}  // namespace fishbone
