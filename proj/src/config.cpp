#include "muskat/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace muskat {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                             "' expects a number, got '" + value + "'",
                         line, key);
    }
}

int parse_int(const std::string& value, int line, const std::string& key) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                             "' expects an integer, got '" + value + "'",
                         line, key);
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key + "': " + msg, line, key);
}

}  // namespace

const char* model_name(Model m) {
    switch (m) {
        case Model::linear2d: return "linear2d";
        case Model::darcy2d: return "darcy2d";
        case Model::forchheimer2d: return "forchheimer2d";
        case Model::darcy3d_finite: return "darcy3d_finite";
        case Model::darcy3d_infinite: return "darcy3d_infinite";
        case Model::expansion2d: return "expansion2d";
    }
    return "?";
}

const char* scheme_name(Scheme s) { return s == Scheme::if_rk2 ? "if_rk2" : "if_rk4"; }

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool saw_model = false, saw_n = false, saw_dt = false, saw_tend = false;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected 'key = value'", line,
                             "");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, key, "empty key");
        if (value.empty()) fail(line, key, "empty value");

        if (key == "model") {
            saw_model = true;
            if (value == "linear2d") cfg.model = Model::linear2d;
            else if (value == "darcy2d") cfg.model = Model::darcy2d;
            else if (value == "forchheimer2d") cfg.model = Model::forchheimer2d;
            else if (value == "darcy3d_finite") cfg.model = Model::darcy3d_finite;
            else if (value == "darcy3d_infinite") cfg.model = Model::darcy3d_infinite;
            else if (value == "expansion2d") cfg.model = Model::expansion2d;
            else fail(line, key, "unknown model '" + value + "'");
        } else if (key == "nu") {
            cfg.nu = parse_double(value, line, key);
            if (cfg.nu < 0.0) fail(line, key, "nu must be >= 0");
        } else if (key == "lambda") {
            cfg.lambda = parse_double(value, line, key);
            if (cfg.lambda < 0.0) fail(line, key, "lambda must be >= 0");
        } else if (key == "sigma") {
            cfg.sigma = parse_double(value, line, key);
            if (cfg.sigma <= 0.0) fail(line, key, "sigma must be > 0");
        } else if (key == "resolution.n") {
            saw_n = true;
            cfg.n = parse_int(value, line, key);
            if (cfg.n < 8 || cfg.n % 2 != 0) fail(line, key, "n must be even and >= 8");
        } else if (key == "resolution.n2") {
            cfg.n2 = parse_int(value, line, key);
            if (cfg.n2 < 8 || cfg.n2 % 2 != 0) fail(line, key, "n2 must be even and >= 8");
        } else if (key == "strip.depth_truncation") {
            cfg.strip_depth = parse_double(value, line, key);
            if (cfg.strip_depth <= 0.0) fail(line, key, "depth must be > 0");
        } else if (key == "strip.panels") {
            cfg.strip_panels = parse_int(value, line, key);
            if (cfg.strip_panels < 1) fail(line, key, "panels must be >= 1");
        } else if (key == "strip.nodes_per_panel") {
            cfg.strip_nodes = parse_int(value, line, key);
            if (cfg.strip_nodes < 2) fail(line, key, "nodes_per_panel must be >= 2");
        } else if (key == "time.dt") {
            saw_dt = true;
            cfg.dt = parse_double(value, line, key);
            if (cfg.dt <= 0.0) fail(line, key, "dt must be > 0");
        } else if (key == "time.t_end") {
            saw_tend = true;
            cfg.t_end = parse_double(value, line, key);
            if (cfg.t_end < 0.0) fail(line, key, "t_end must be >= 0");
        } else if (key == "time.scheme") {
            if (value == "if_rk2") cfg.scheme = Scheme::if_rk2;
            else if (value == "if_rk4") cfg.scheme = Scheme::if_rk4;
            else fail(line, key, "unknown scheme '" + value + "'");
        } else if (key == "time.snapshot_stride") {
            cfg.snapshot_stride = parse_int(value, line, key);
            if (cfg.snapshot_stride < 1) fail(line, key, "stride must be >= 1");
        } else if (key == "initial.mode") {
            const auto toks = split_ws(value);
            ModeSpec mode;
            if (toks.size() == 3) {
                mode.k[0] = parse_int(toks[0], line, key);
                mode.amplitude = parse_double(toks[1], line, key);
                mode.phase = parse_double(toks[2], line, key);
            } else if (toks.size() == 4) {
                mode.k[0] = parse_int(toks[0], line, key);
                mode.k[1] = parse_int(toks[1], line, key);
                mode.amplitude = parse_double(toks[2], line, key);
                mode.phase = parse_double(toks[3], line, key);
            } else {
                fail(line, key, "expected 'k amplitude phase' or 'k1 k2 amplitude phase'");
            }
            cfg.modes.push_back(mode);
        } else if (key == "initial.file") {
            cfg.initial_file = value;
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else {
            fail(line, key, "unknown key");
        }
    }

    if (!saw_model) throw ParseError("missing required key 'model'", 0, "model");
    if (!saw_n) throw ParseError("missing required key 'resolution.n'", 0, "resolution.n");
    if (!saw_dt) throw ParseError("missing required key 'time.dt'", 0, "time.dt");
    if (!saw_tend) throw ParseError("missing required key 'time.t_end'", 0, "time.t_end");
    if (cfg.t_end > 0.0 && cfg.dt > cfg.t_end)
        throw ParseError("time.dt must not exceed time.t_end", 0, "time.dt");
    if (cfg.n2 != 0 && !cfg.uses_2d_grid())
        throw ParseError("resolution.n2 is only valid for the darcy3d models", 0,
                         "resolution.n2");
    if (!cfg.modes.empty() && !cfg.initial_file.empty())
        throw ParseError("initial.mode and initial.file are mutually exclusive", 0,
                         "initial.file");
    for (const ModeSpec& m : cfg.modes) {
        if (!cfg.uses_2d_grid() && m.k[1] != 0)
            throw ParseError("two-component mode on a one-dimensional model", 0, "initial.mode");
    }
    return cfg;
}

std::string config_text(const RunConfig& c) {
    std::ostringstream out;
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "model = " << model_name(c.model) << "\n";
    out << "nu = " << num(c.nu) << "\n";
    out << "lambda = " << num(c.lambda) << "\n";
    out << "sigma = " << num(c.sigma) << "\n";
    out << "resolution.n = " << c.n << "\n";
    if (c.n2 != 0) out << "resolution.n2 = " << c.n2 << "\n";
    out << "strip.depth_truncation = " << num(c.strip_depth) << "\n";
    out << "strip.panels = " << c.strip_panels << "\n";
    out << "strip.nodes_per_panel = " << c.strip_nodes << "\n";
    out << "time.dt = " << num(c.dt) << "\n";
    out << "time.t_end = " << num(c.t_end) << "\n";
    out << "time.scheme = " << scheme_name(c.scheme) << "\n";
    out << "time.snapshot_stride = " << c.snapshot_stride << "\n";
    for (const ModeSpec& m : c.modes) {
        out << "initial.mode = " << m.k[0];
        if (c.uses_2d_grid()) out << " " << m.k[1];
        out << " " << num(m.amplitude) << " " << num(m.phase) << "\n";
    }
    if (!c.initial_file.empty()) out << "initial.file = " << c.initial_file << "\n";
    out << "output_dir = " << c.output_dir << "\n";
    return out.str();
}

PeriodicGrid RunConfig::make_grid() const {
    if (uses_2d_grid()) return PeriodicGrid::torus(n, n2 == 0 ? n : n2);
    return PeriodicGrid::line(n);
}

StripGrid RunConfig::make_strip() const {
    return StripGrid(PeriodicGrid::line(n), strip_depth, strip_panels, strip_nodes);
}

ModelParams RunConfig::make_params() const {
    ModelParams p;
    p.model = model;
    p.nu = nu;
    p.lambda = lambda;
    p.sigma = sigma;
    p.depth = model == Model::darcy3d_finite ? DepthMode::finite : DepthMode::infinite;
    return p;
}

StepConfig RunConfig::make_step_config() const {
    StepConfig s;
    s.dt = dt;
    s.t_end = t_end;
    s.scheme = scheme;
    s.snapshot_stride = snapshot_stride;
    return s;
}

}  // namespace muskat
