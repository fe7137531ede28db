#pragma once

// Structural parameters, slackening-model descriptors and the flat
// key=value configuration format.
//
//   # comment
//   alpha = 1        flexural stiffness coefficient [1/s^2]
//   beta  = 2        torsional stiffness coefficient [1/s^2]
//   gamma = 3        deck geometry ratio [-]
//   j = 1            flexural mode index
//   k = 1            torsional mode index
//   model = mmk      mmk | mmkbar | sqrt | exp | piecewise
//   m = 3            restoring-force slope at zero [1/s^2]
//   r0 = 0.33333333333333331   slack offset (mmk, mmkbar)
//   h = 1            smoothing / scale (sqrt, exp)
//   M = 3            asymptotic slope; optional, must match the model
//   knots = f.csv    r,f pairs for model = piecewise (relative to the file)
//   beta_ref = ...   reference beta marked in sweeps; optional

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishbone/slackening.hpp"

namespace fishbone {

struct BridgeParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    int j = 1;
    int k = 1;

    // Throws ValidationError naming the first offending field.
    void validate() const;
};

// mmkbar is the MMK law seen through its non-smooth approximation, the
// system with a closed-form discriminant.
enum class ModelKind { mmk, mmkbar, sqrt, exp, piecewise };

struct ModelSpec {
    ModelKind kind = ModelKind::mmk;
    double m = 0.0;
    double r0 = 0.0;
    double h = 0.0;
    std::optional<double> M;
    std::string knots_path;
    std::vector<Knot> knots;

    // The underlying restoring-force law (mmkbar yields the MMK law).
    SlackeningModel slackening() const;
};

std::string_view to_string(ModelKind kind);

// Raw key=value entries; later layers override earlier ones.
using ConfigValues = std::map<std::string, std::string>;

// Throws SchemaError on malformed lines, unknown or repeated keys.
ConfigValues parse_config_text(std::string_view text);
ConfigValues read_config_file(const std::filesystem::path& path);
// Parses one "key=value" override.
std::pair<std::string, std::string> parse_assignment(std::string_view text);
void overlay(ConfigValues& base, const ConfigValues& top);

BridgeParams params_from(const ConfigValues& values);
// Relative knot paths resolve against base_dir.
ModelSpec model_from(const ConfigValues& values, const std::filesystem::path& base_dir = {});

BridgeParams load_params(std::string_view text);
// Emits the params as config text that load_params reads back bit-exactly.
std::string serialize(const BridgeParams& p);
std::string serialize(const ModelSpec& m);

std::vector<Knot> read_knots_csv(const std::filesystem::path& path);

struct Preset {
    std::string name;
    ConfigValues values;
    std::optional<double> beta_reference;
    std::string note;
};

// academic or tnb; LookupError lists the available names otherwise. The tnb
// preset leaves gamma (and beta) to the user.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

struct RunConfig {
    BridgeParams params;
    ModelSpec model;
    std::optional<double> beta_reference;
};

// Builds params and model from fully layered values (the CLI applies the
// config file, then the preset, then --set overrides).
RunConfig resolve_config(const ConfigValues& values, const std::filesystem::path& base_dir = {});

}  // namespace fishbone
