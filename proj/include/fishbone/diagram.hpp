#pragma once

// (q, beta) stability diagrams: grid sweeps with either engine, tongue-tip
// bookkeeping and exporters (CSV, plain PGM, JSON summary).

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishbone/floquet.hpp"
#include "fishbone/kernel.hpp"
#include "fishbone/params.hpp"

namespace fishbone {

enum class Engine { numeric, closed_form };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view s);

// n evenly spaced values from lo to hi inclusive (n = 1 gives lo).
struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;

    double at(int i) const;
    std::vector<double> values() const;
    double spacing() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }
};

// "a:b:n"; SchemaError naming the flag otherwise.
Axis parse_axis(std::string_view text, const std::string& flag);

// Mode kernel for the numeric engine: the MMK law uses the closed-form
// projections, mmkbar the non-smooth approximation, other laws quadrature.
std::unique_ptr<ModeKernel> make_kernel(const ModelSpec& model, int j, int k);

struct SweepOptions {
    Engine engine = Engine::closed_form;
    Tolerances tol;
    double class_tol = kDefaultClassTol;
    int jobs = 1;
    // Solve the flexural period once per q column and share it across the
    // column's beta values.
    bool cache_columns = true;
};

struct GridMeta {
    BridgeParams params;
    ModelSpec model;
    Engine engine = Engine::closed_form;
    Tolerances tol;
    double class_tol = kDefaultClassTol;
    double wall_seconds = 0.0;
    std::optional<double> beta_reference;
};

struct StabilityGrid {
    std::vector<double> q_axis;
    std::vector<double> beta_axis;
    // Row-major over beta then q: index ib * nq + iq.
    std::vector<double> delta;
    std::vector<StabilityClass> cls;
    // |det M - 1| per cell (numeric engine; NaN for closed form or failure)
    std::vector<double> det_drift;
    std::vector<std::string> errors;  // one per failed cell, empty otherwise
    GridMeta meta;

    std::size_t nq() const { return q_axis.size(); }
    std::size_t nbeta() const { return beta_axis.size(); }
    std::size_t index(std::size_t ib, std::size_t iq) const { return ib * nq() + iq; }
    std::size_t failures() const;
};

// Invalid configuration throws ConfigError; solver failures mark cells.
StabilityGrid sweep_grid(const RunConfig& cfg, const Axis& q, const Axis& beta, const SweepOptions& opt = {});

struct TongueTip {
    int N;
    double beta;
    bool vanished;  // odd N for even j
};

// beta_N(0) = (alpha j^4 + 2 m) N^2 / (4 k^2) - 2 gamma m / k^2.
std::vector<TongueTip> tongue_tips(const BridgeParams& p, double m, int n_max);

// Start of an unstable region: its lowest-q column and the middle of the
// unstable run of beta cells there.
struct DetectedTip {
    double q;
    double beta;
    double beta_lo;
    double beta_hi;
};

// Scans columns in increasing q; an unstable run that overlaps no unstable
// run of the previous column starts a new tongue.
std::vector<DetectedTip> detect_tips(const StabilityGrid& grid);

// Maximal runs of unstable cells along beta in column iq, as [lo, hi] beta
// values of the first and last cell.
std::vector<std::pair<double, double>> unstable_bands(const StabilityGrid& grid, std::size_t iq);

void write_csv(const StabilityGrid& grid, std::ostream& out);
// 192 for delta > 2, 96 for delta < -2, 255 otherwise, 0 for failed cells;
// top row is the largest beta.
void write_pgm(const StabilityGrid& grid, std::ostream& out);
void write_json_summary(const StabilityGrid& grid, std::ostream& out, int n_tips = 5);

enum class ExportFormat { csv, pgm, json };
ExportFormat parse_format(std::string_view s);
void export_grid(const StabilityGrid& grid, ExportFormat format, const std::string& path);

struct EngineComparison {
    double max_abs = 0.0;
    double q = 0.0;
    double beta = 0.0;
    std::size_t cells = 0;
    std::size_t failures = 0;
    double max_det_drift = 0.0;
};

// Needs model mmkbar and j = k (ConfigError otherwise).
EngineComparison compare_engines(const RunConfig& cfg, const Axis& q, const Axis& beta, SweepOptions opt = {});

// "%.17g"
std::string format_double(double v);

}  // namespace fishbone
