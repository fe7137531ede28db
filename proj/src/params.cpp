#include "fishbone/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fishbone/errors.hpp"

namespace fishbone {

namespace {

const std::set<std::string, std::less<>> kKeys = {"alpha", "beta", "gamma", "j",     "k",       "model",
                                                  "m",     "r0",   "h",     "M",     "knots",   "beta_ref"};

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const ConfigValues& v, const std::string& key) {
    const std::string& s = v.at(key);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(out))
        throw SchemaError(key, key + ": expected a finite number, got '" + s + "'");
    return out;
}

int to_int(const ConfigValues& v, const std::string& key) {
    const std::string& s = v.at(key);
    long out = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size() || out > 1000000 || out < -1000000)
        throw SchemaError(key, key + ": expected an integer, got '" + s + "'");
    return static_cast<int>(out);
}

double required(const ConfigValues& v, const std::string& key, const std::string& why) {
    if (!v.count(key)) throw ValidationError(key, key + " is required" + why);
    return to_double(v, key);
}

}  // namespace

void BridgeParams::validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw ValidationError("alpha", "alpha must be positive");
    if (!(beta >= 0) || !std::isfinite(beta)) throw ValidationError("beta", "beta must be >= 0");
    if (!(gamma > 0) || !std::isfinite(gamma)) throw ValidationError("gamma", "gamma must be positive");
    if (j < 1) throw ValidationError("j", "j must be >= 1");
    if (k < 1) throw ValidationError("k", "k must be >= 1");
}

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::mmk: return "mmk";
        case ModelKind::mmkbar: return "mmkbar";
        case ModelKind::sqrt: return "sqrt";
        case ModelKind::exp: return "exp";
        case ModelKind::piecewise: return "piecewise";
    }
    return "?";
}

SlackeningModel ModelSpec::slackening() const {
    switch (kind) {
        case ModelKind::mmk:
        case ModelKind::mmkbar: return SlackeningModel::mmk(m, r0);
        case ModelKind::sqrt: return SlackeningModel::sqrt_smooth(m, h);
        case ModelKind::exp: return SlackeningModel::exponential(m, h);
        case ModelKind::piecewise: return SlackeningModel::piecewise(knots);
    }
    throw ConfigError("unknown model kind");
}

ConfigValues parse_config_text(std::string_view text) {
    ConfigValues out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw SchemaError(std::string(line), "line " + std::to_string(lineno) + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (!kKeys.count(key)) throw SchemaError(key, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (value.empty()) throw SchemaError(key, "line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        if (out.count(key)) throw SchemaError(key, "line " + std::to_string(lineno) + ": repeated key '" + key + "'");
        out.emplace(std::move(key), std::move(value));
    }
    return out;
}

ConfigValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::pair<std::string, std::string> parse_assignment(std::string_view text) {
    const ConfigValues v = parse_config_text(text);
    if (v.size() != 1) throw SchemaError(std::string(text), "expected exactly one key=value pair");
    return *v.begin();
}

void overlay(ConfigValues& base, const ConfigValues& top) {
    for (const auto& [k, v] : top) base[k] = v;
}

BridgeParams params_from(const ConfigValues& values) {
    BridgeParams p;
    p.alpha = required(values, "alpha", "");
    p.beta = required(values, "beta", "");
    p.gamma = required(values, "gamma", "");
    if (!values.count("j")) throw ValidationError("j", "j is required");
    if (!values.count("k")) throw ValidationError("k", "k is required");
    p.j = to_int(values, "j");
    p.k = to_int(values, "k");
    p.validate();
    return p;
}

ModelSpec model_from(const ConfigValues& values, const std::filesystem::path& base_dir) {
    ModelSpec s;
    const std::string kind = values.count("model") ? values.at("model") : "mmk";
    if (kind == "mmk")
        s.kind = ModelKind::mmk;
    else if (kind == "mmkbar")
        s.kind = ModelKind::mmkbar;
    else if (kind == "sqrt")
        s.kind = ModelKind::sqrt;
    else if (kind == "exp")
        s.kind = ModelKind::exp;
    else if (kind == "piecewise")
        s.kind = ModelKind::piecewise;
    else
        throw SchemaError("model", "model must be one of mmk, mmkbar, sqrt, exp, piecewise (got '" + kind + "')");

    switch (s.kind) {
        case ModelKind::mmk:
        case ModelKind::mmkbar:
            s.m = required(values, "m", " for model " + kind);
            s.r0 = required(values, "r0", " for model " + kind);
            break;
        case ModelKind::sqrt:
        case ModelKind::exp:
            s.m = required(values, "m", " for model " + kind);
            s.h = required(values, "h", " for model " + kind);
            break;
        case ModelKind::piecewise: {
            if (!values.count("knots")) throw ValidationError("knots", "knots is required for model piecewise");
            s.knots_path = values.at("knots");
            std::filesystem::path path(s.knots_path);
            if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
            s.knots = read_knots_csv(path);
            break;
        }
    }
    if (values.count("M")) s.M = to_double(values, "M");

    // Construct once so invalid parameters surface here.
    const SlackeningModel model = s.slackening();
    if (s.kind == ModelKind::piecewise) s.m = model.slope_at_zero();
    if (s.M) {
        const auto actual = model.asymptotic_slope();
        if (!actual) throw ValidationError("M", "M given but the model has no asymptotic slope");
        if (std::fabs(*actual - *s.M) > 1e-12 * std::max(1.0, std::fabs(*actual)))
            throw ValidationError("M", "M = " + fmt17(*s.M) + " disagrees with the model's asymptotic slope " +
                                           fmt17(*actual));
    }
    return s;
}

BridgeParams load_params(std::string_view text) { return params_from(parse_config_text(text)); }

std::string serialize(const BridgeParams& p) {
    std::string out;
    out += "alpha = " + fmt17(p.alpha) + "\n";
    out += "beta = " + fmt17(p.beta) + "\n";
    out += "gamma = " + fmt17(p.gamma) + "\n";
    out += "j = " + std::to_string(p.j) + "\n";
    out += "k = " + std::to_string(p.k) + "\n";
    return out;
}

std::string serialize(const ModelSpec& m) {
    std::string out = "model = " + std::string(to_string(m.kind)) + "\n";
    switch (m.kind) {
        case ModelKind::mmk:
        case ModelKind::mmkbar: out += "m = " + fmt17(m.m) + "\nr0 = " + fmt17(m.r0) + "\n"; break;
        case ModelKind::sqrt:
        case ModelKind::exp: out += "m = " + fmt17(m.m) + "\nh = " + fmt17(m.h) + "\n"; break;
        case ModelKind::piecewise: out += "knots = " + m.knots_path + "\n"; break;
    }
    if (m.M) out += "M = " + fmt17(*m.M) + "\n";
    return out;
}

std::vector<Knot> read_knots_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read knots file " + path.string());
    std::vector<Knot> knots;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto comma = s.find(',');
        double r = 0.0, f = 0.0;
        bool ok = comma != std::string_view::npos;
        if (ok) {
            const auto a = trim(s.substr(0, comma)), b = trim(s.substr(comma + 1));
            const auto ra = std::from_chars(a.data(), a.data() + a.size(), r);
            const auto rb = std::from_chars(b.data(), b.data() + b.size(), f);
            ok = ra.ec == std::errc() && ra.ptr == a.data() + a.size() && rb.ec == std::errc() &&
                 rb.ptr == b.data() + b.size();
        }
        if (!ok) {
            // A non-numeric first line is a header.
            if (knots.empty() && lineno == 1) continue;
            throw SchemaError("knots", path.string() + ":" + std::to_string(lineno) + ": expected r,f");
        }
        knots.push_back({r, f});
    }
    return knots;
}

std::vector<std::string> preset_names() { return {"academic", "tnb"}; }

Preset preset(std::string_view name) {
    if (name == "academic") {
        // beta is the swept spectral parameter; 2 is a placeholder.
        return {"academic",
                {{"alpha", "1"},
                 {"beta", "2"},
                 {"gamma", "3"},
                 {"j", "1"},
                 {"k", "1"},
                 {"model", "mmk"},
                 {"m", "3"},
                 {"r0", fmt17(1.0 / 3.0)}},
                std::nullopt,
                "academic test case, beta swept"};
    }
    if (name == "tnb") {
        return {"tnb",
                {{"alpha", "8.0353e-4"},
                 {"j", "3"},
                 {"k", "2"},
                 {"model", "mmk"},
                 {"m", "185.1"},
                 {"r0", "0.0265"},
                 {"beta_ref", "8.1833e-5"}},
                8.1833e-5,
                "Tacoma Narrows Bridge constants; gamma must be supplied and beta is swept"};
    }
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw LookupError("unknown preset '" + std::string(name) + "' (available: " + names + ")");
}

RunConfig resolve_config(const ConfigValues& values, const std::filesystem::path& base_dir) {
    RunConfig rc;
    rc.params = params_from(values);
    rc.model = model_from(values, base_dir);
    if (values.count("beta_ref")) rc.beta_reference = to_double(values, "beta_ref");
    return rc;
}

}  // namespace fishbone
