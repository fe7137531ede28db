// Command-line front end: stability sweeps, single cells, orbits, kernels,
// the high-energy limit and tongue tips.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fishbone/diagram.hpp"
#include "fishbone/errors.hpp"
#include "fishbone/flexural.hpp"
#include "fishbone/limit.hpp"
#include "fishbone/piecewise.hpp"
#include "fishbone/projection.hpp"

using namespace fishbone;
using nlohmann::json;

namespace {

struct Common {
    std::string config;
    std::string preset_name;
    std::vector<std::string> sets;
    std::string engine;
    std::string out;
    std::string format = "csv";
    double tol_class = kDefaultClassTol;
    double rtol = 1e-10;
    double atol = 1e-12;
    int jobs = 1;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "key=value parameter file");
    app->add_option("--preset", c.preset_name, "academic | tnb (overrides file values)");
    app->add_option("--set", c.sets, "key=value override, applied last");
    app->add_option("--out", c.out, "output path (default stdout)");
    app->add_option("--rtol", c.rtol, "integrator relative tolerance");
    app->add_option("--atol", c.atol, "integrator absolute tolerance");
}

// Layers config file, preset and --set values. When needs_beta is false a
// missing beta defaults to 0 (it is swept or unused).
RunConfig load(const Common& c, bool needs_beta) {
    ConfigValues values;
    std::filesystem::path base;
    if (!c.config.empty()) {
        values = read_config_file(c.config);
        base = std::filesystem::path(c.config).parent_path();
    }
    if (!c.preset_name.empty()) overlay(values, preset(c.preset_name).values);
    for (const auto& s : c.sets) {
        auto [k, v] = parse_assignment(s);
        values[k] = v;
    }
    if (!needs_beta && !values.count("beta")) values["beta"] = "0";
    return resolve_config(values, base);
}

Tolerances tolerances(const Common& c) {
    if (!(c.rtol > 0) || !(c.atol > 0)) throw ValidationError("rtol", "tolerances must be positive");
    return {c.rtol, c.atol};
}

Engine engine_for(const Common& c, const RunConfig& cfg) {
    if (!c.engine.empty()) return parse_engine(c.engine);
    return cfg.model.kind == ModelKind::mmkbar && cfg.params.j == cfg.params.k ? Engine::closed_form
                                                                               : Engine::numeric;
}

template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write(out);
    out.flush();
    if (!out) throw ConfigError("write to " + path + " failed");
}

json limit_json(const LimitQuantities& lq) {
    return {{"j", lq.j},
            {"k", lq.k},
            {"M", lq.M},
            {"epsilon", lq.epsilon},
            {"omega_plus", lq.omega_plus},
            {"omega_minus", lq.omega_minus},
            {"A_plus", lq.A_plus},
            {"A_minus", lq.A_minus},
            {"phi_plus", lq.phi_plus},
            {"phi_minus", lq.phi_minus},
            {"a", lq.a},
            {"delta_inf", lq.delta_inf},
            {"period_inf", limit_period(lq)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fishbone: flexural-torsional stability of the fish-bone bridge model"};
    app.require_subcommand(1);

    Common c;
    std::string q_range, beta_range, r_range;
    double q = 1.0;
    std::optional<double> beta;
    int n_max = 5;

    auto* sweep = app.add_subcommand("sweep", "discriminant over a (q, beta) grid");
    add_common(sweep, c);
    sweep->add_option("--engine", c.engine, "numeric | closed-form");
    sweep->add_option("--q-range", q_range, "a:b:n")->required();
    sweep->add_option("--beta-range", beta_range, "a:b:n")->required();
    sweep->add_option("--format", c.format, "csv | pgm | json");
    sweep->add_option("--tol-class", c.tol_class, "boundary tolerance on |delta| = 2");
    sweep->add_option("--jobs", c.jobs, "worker threads");

    auto* delta = app.add_subcommand("delta", "discriminant of one (q, beta) cell");
    add_common(delta, c);
    delta->add_option("--engine", c.engine, "numeric | closed-form");
    delta->add_option("--q", q, "amplitude")->required();
    delta->add_option("--beta", beta, "spectral value (default: config beta)");
    delta->add_option("--tol-class", c.tol_class, "boundary tolerance on |delta| = 2");

    auto* orbit = app.add_subcommand("orbit", "one period of the flexural orbit as t,u,du,E");
    add_common(orbit, c);
    orbit->add_option("--q", q, "amplitude")->required();

    auto* kernel = app.add_subcommand("kernel", "tabulate f_j and g_jk");
    add_common(kernel, c);
    kernel->add_option("--r-range", r_range, "a:b:n")->required();

    auto* limit = app.add_subcommand("limit", "high-energy limit quantities and verdict");
    add_common(limit, c);

    auto* tips = app.add_subcommand("tips", "tongue tips beta_N(0)");
    add_common(tips, c);
    tips->add_option("--n", n_max, "largest N");

    auto* check = app.add_subcommand("check-model", "structural assumptions of the restoring force");
    add_common(check, c);

    auto* compare = app.add_subcommand("compare-engines", "numeric vs closed-form discriminants");
    add_common(compare, c);
    compare->add_option("--q-range", q_range, "a:b:n")->required();
    compare->add_option("--beta-range", beta_range, "a:b:n")->required();
    compare->add_option("--jobs", c.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            const RunConfig cfg = load(c, false);
            SweepOptions opt;
            opt.engine = engine_for(c, cfg);
            opt.tol = tolerances(c);
            opt.class_tol = c.tol_class;
            opt.jobs = c.jobs;
            const ExportFormat format = parse_format(c.format);
            const StabilityGrid g =
                sweep_grid(cfg, parse_axis(q_range, "--q-range"), parse_axis(beta_range, "--beta-range"), opt);
            emit(c.out, [&](std::ostream& os) {
                switch (format) {
                    case ExportFormat::csv: write_csv(g, os); break;
                    case ExportFormat::pgm: write_pgm(g, os); break;
                    case ExportFormat::json: write_json_summary(g, os); break;
                }
            });
            if (g.failures() > 0) std::cerr << "warning: " << g.failures() << " failed cells\n";
        } else if (delta->parsed()) {
            const RunConfig cfg = load(c, !beta.has_value());
            const double b = beta.value_or(cfg.params.beta);
            const Engine e = engine_for(c, cfg);
            json j{{"q", q}, {"beta", b}, {"engine", to_string(e)}};
            if (e == Engine::closed_form) {
                if (cfg.model.kind != ModelKind::mmkbar)
                    throw ConfigError("the closed-form engine needs model = mmkbar");
                BridgeParams p = cfg.params;
                p.beta = b;
                const PiecewiseSolution s = barf_times(p, cfg.model.m, cfg.model.r0, q);
                const MeissnerResult r = meissner_discriminant(barf_steps(s));
                j["delta"] = r.delta;
                j["period"] = s.period;
                j["class"] = to_string(classify(r.delta, c.tol_class).cls);
            } else {
                const auto k = make_kernel(cfg.model, cfg.params.j, cfg.params.k);
                MonodromyOptions mo;
                mo.tol = tolerances(c);
                const MonodromyResult r = monodromy_numeric(cfg.params, *k, q, b, mo);
                j["delta"] = r.verdict.delta;
                j["period"] = r.period;
                j["class"] = to_string(classify(r.verdict.delta, c.tol_class).cls);
                j["det_drift"] = r.det_drift;
                j["monodromy"] = {r.monodromy.a, r.monodromy.b, r.monodromy.c, r.monodromy.d};
            }
            emit(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        } else if (orbit->parsed()) {
            const RunConfig cfg = load(c, false);
            const auto k = make_kernel(cfg.model, cfg.params.j, cfg.params.k);
            FlexuralOptions fo;
            fo.tol = tolerances(c);
            const Trajectory tr = solve_flexural(cfg.params, *k, q, fo);
            emit(c.out, [&](std::ostream& os) {
                os << "t,u,du,E\n";
                for (const auto& s : tr.samples)
                    os << format_double(s.t) << ',' << format_double(s.u) << ',' << format_double(s.du) << ','
                       << format_double(flexural_energy(cfg.params, *k, s.u, s.du)) << '\n';
            });
            std::cerr << "period " << format_double(tr.period) << " energy drift "
                      << format_double(tr.energy_drift) << '\n';
        } else if (kernel->parsed()) {
            const RunConfig cfg = load(c, false);
            const Axis r = parse_axis(r_range, "--r-range");
            const auto k = make_kernel(cfg.model, cfg.params.j, cfg.params.k);
            emit(c.out, [&](std::ostream& os) {
                os << "r,f_j,g_jk\n";
                for (double x : r.values())
                    os << format_double(x) << ',' << format_double(k->force(x)) << ','
                       << format_double(k->coupling(x)) << '\n';
            });
        } else if (limit->parsed()) {
            const RunConfig cfg = load(c, true);
            const HighEnergyReport rep = high_energy_verdict(cfg.params, cfg.model.slackening());
            json j{{"verdict", to_string(rep.verdict)}};
            if (rep.limit) j["limit"] = limit_json(*rep.limit);
            if (rep.verdict == HighEnergyVerdict::even_j_always_stable)
                j["decoupled"] = {{"omega", rep.omega_even}, {"A", rep.A_even}};
            emit(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        } else if (tips->parsed()) {
            const RunConfig cfg = load(c, false);
            emit(c.out, [&](std::ostream& os) {
                os << "N,beta,vanished\n";
                for (const TongueTip& t : tongue_tips(cfg.params, cfg.model.m, n_max))
                    os << t.N << ',' << format_double(t.beta) << ',' << (t.vanished ? "true" : "false") << '\n';
            });
        } else if (check->parsed()) {
            const RunConfig cfg = load(c, false);
            const SlackeningModel model = cfg.model.slackening();
            const AssumptionReport rep = model.check_assumptions();
            json j{{"model", model.name()}, {"S0", rep.s0}, {"S1", rep.s1}, {"S2", rep.s2}};
            if (rep.M) j["M"] = *rep.M;
            j["slope_at_zero"] = model.slope_at_zero();
            j["kinks"] = model.kinks();
            emit(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        } else if (compare->parsed()) {
            const RunConfig cfg = load(c, false);
            SweepOptions opt;
            opt.tol = tolerances(c);
            opt.jobs = c.jobs;
            const EngineComparison r = compare_engines(cfg, parse_axis(q_range, "--q-range"),
                                                       parse_axis(beta_range, "--beta-range"), opt);
            const json j{{"max_abs_discrepancy", r.max_abs}, {"q", r.q},         {"beta", r.beta},
                         {"cells", r.cells},                 {"failures", r.failures},
                         {"max_det_drift", r.max_det_drift}};
            emit(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
