#pragma once

#include <array>
#include <string>
#include <vector>

#include "muskat/time_march.hpp"

namespace muskat {

/// One cosine mode of the initial condition: amplitude * cos(k.x + phase).
struct ModeSpec {
    std::array<int, 2> k{0, 0};
    double amplitude = 0.0;
    double phase = 0.0;

    bool operator==(const ModeSpec&) const = default;
};

/// Fully resolved run description. Flat `key = value` text with dotted
/// sections; unknown keys are rejected and every error names its key and
/// line. See parse_config for the key list.
struct RunConfig {
    Model model = Model::darcy2d;
    double nu = 0.0;
    double lambda = 0.0;
    double sigma = 1.0;
    int n = 0;
    int n2 = 0;  // 0 means "same as n"; only meaningful for the 2D-grid models
    double strip_depth = 18.0;
    int strip_panels = 12;
    int strip_nodes = 8;
    double dt = 0.0;
    double t_end = 0.0;
    Scheme scheme = Scheme::if_rk2;
    int snapshot_stride = 10;
    std::vector<ModeSpec> modes;
    std::string initial_file;
    std::string output_dir = "out";

    bool operator==(const RunConfig&) const = default;

    bool uses_2d_grid() const {
        return model == Model::darcy3d_finite || model == Model::darcy3d_infinite;
    }
    PeriodicGrid make_grid() const;
    StripGrid make_strip() const;
    ModelParams make_params() const;
    StepConfig make_step_config() const;
};

RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse_config(config_text(c)) == c.
std::string config_text(const RunConfig& c);

const char* model_name(Model m);
const char* scheme_name(Scheme s);

}  // namespace muskat
