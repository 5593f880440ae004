// simulate: run one model from a key = value config file.
//
//   simulate <config-path> [--output-dir PATH] [--resolution N] [--t-end T]
//
// Exit codes: 0 success, 2 parse error, 3 infeasible data, 4 blow-up,
// 5 i/o error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "muskat/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral interface-evolution models on periodic domains"};
    std::string config_path;
    std::string output_dir;
    int resolution = 0;
    double t_end = -1.0;

    app.add_option("config", config_path, "Path to the run config")->required();
    app.add_option("--output-dir", output_dir, "Override output_dir");
    app.add_option("--resolution", resolution, "Override resolution.n");
    app.add_option("--t-end", t_end, "Override time.t_end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : muskat::exit_parse;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "i/o error: cannot read config '" << config_path << "'\n";
        return muskat::exit_io;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    muskat::RunConfig cfg;
    try {
        cfg = muskat::parse_config(buffer.str());
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (resolution != 0) {
            if (resolution < 8 || resolution % 2 != 0) {
                std::cerr << "parse error: --resolution must be even and >= 8\n";
                return muskat::exit_parse;
            }
            cfg.n = resolution;
        }
        if (t_end >= 0.0) cfg.t_end = t_end;
    } catch (const muskat::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return muskat::exit_parse;
    }

    return muskat::run_simulation(cfg);
}
