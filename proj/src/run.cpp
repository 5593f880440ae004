#include "muskat/run.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace muskat {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Field modes_to_field(const PeriodicGrid& grid, const std::vector<ModeSpec>& modes) {
    for (const ModeSpec& m : modes) {
        for (int axis = 0; axis < grid.dim(); ++axis) {
            const int limit = grid.nyquist(axis) - 1;
            if (std::abs(m.k[static_cast<std::size_t>(axis)]) > limit)
                throw InvalidInputError("initial mode wavenumber " +
                                        std::to_string(m.k[static_cast<std::size_t>(axis)]) +
                                        " is outside the grid band (|k| <= " +
                                        std::to_string(limit) + ")");
        }
        if (m.k[0] == 0 && (grid.dim() == 1 || m.k[1] == 0))
            throw InvalidInputError("initial mode k = 0 is not zero-mean");
    }
    Field f(grid);
    const int n1 = grid.extent(0);
    const int n2 = grid.dim() == 2 ? grid.extent(1) : 1;
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            double v = 0.0;
            for (const ModeSpec& m : modes) {
                double arg = m.k[0] * grid.point(0, i1) + m.phase;
                if (grid.dim() == 2) arg += m.k[1] * grid.point(1, i2);
                v += m.amplitude * std::cos(arg);
            }
            f.values[static_cast<std::size_t>(i1) * n2 + i2] = v;
        }
    }
    return f;
}

Field file_to_field(const PeriodicGrid& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open initial-values file '" + path + "'");
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (values.size() != grid.size())
        throw InvalidInputError("initial-values file '" + path + "' holds " +
                                std::to_string(values.size()) + " values, expected " +
                                std::to_string(grid.size()));
    for (double x : values)
        if (!std::isfinite(x))
            throw InvalidInputError("initial-values file contains non-finite entries");
    Field f(grid, std::move(values));
    const double m = mean(f);
    for (double& x : f.values) x -= m;  // project out the mean
    return f;
}

struct FileRecord {
    std::string name;
    std::size_t rows;
};

void write_csv_line(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << fmt(v);
        first = false;
    }
    out << '\n';
}

}  // namespace

InitialState build_initial(const RunConfig& cfg) {
    const PeriodicGrid grid = cfg.make_grid();
    Field f = cfg.initial_file.empty() ? modes_to_field(grid, cfg.modes)
                                       : file_to_field(grid, cfg.initial_file);
    InitialState state{std::move(f), std::nullopt};
    if (cfg.model == Model::expansion2d) state.h1 = Field(grid);
    return state;
}

void write_outputs(const IntegrationResult& result, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir + "'");

    std::vector<FileRecord> files;
    bool partial = false;
    std::string failure;

    const auto open_file = [&](const fs::path& p) {
        std::ofstream out(p);
        if (!out) {
            partial = true;
            failure = "cannot open '" + p.string() + "'";
        }
        return out;
    };

    try {
        {
            std::ofstream out = open_file(dir / "diagnostics.csv");
            if (!out) throw IoError(failure);
            out << "t,mean,l2,max_slope\n";
            for (const Snapshot& s : result.trajectory.snapshots)
                write_csv_line(out, {s.t, s.diag.mean, s.diag.l2, s.diag.max_slope});
            files.push_back({"diagnostics.csv", result.trajectory.snapshots.size()});
        }

        for (std::size_t idx = 0; idx < result.trajectory.snapshots.size(); ++idx) {
            const Snapshot& snap = result.trajectory.snapshots[idx];
            // For the expansion pair the recorded surface is sigma h0 + sigma^2 h1.
            Field f = snap.fields.size() == 2
                          ? cfg.sigma * snap.fields[0] +
                                (cfg.sigma * cfg.sigma) * snap.fields[1]
                          : snap.fields[0];
            char name[48];
            std::snprintf(name, sizeof(name), "snap_%06zu.csv", idx);
            {
                std::ofstream out = open_file(dir / name);
                if (!out) throw IoError(failure);
                const PeriodicGrid& g = f.grid;
                if (g.dim() == 1) {
                    out << "x1,f\n";
                    for (int i = 0; i < g.extent(0); ++i)
                        write_csv_line(out, {g.point(0, i), f.values[static_cast<std::size_t>(i)]});
                } else {
                    out << "x1,x2,f\n";
                    for (int i1 = 0; i1 < g.extent(0); ++i1)
                        for (int i2 = 0; i2 < g.extent(1); ++i2)
                            write_csv_line(out, {g.point(0, i1), g.point(1, i2),
                                                 f.at(i1, i2)});
                }
                files.push_back({name, f.grid.size()});
            }

            std::snprintf(name, sizeof(name), "spectrum_%06zu.csv", idx);
            {
                std::ofstream out = open_file(dir / name);
                if (!out) throw IoError(failure);
                const Spectrum s = transform(f);
                const PeriodicGrid& g = f.grid;
                std::size_t rows = 0;
                if (g.dim() == 1) {
                    out << "k,re,im\n";
                    for (int k = -(g.nyquist(0) - 1); k <= g.nyquist(0); ++k, ++rows) {
                        const auto c = s.at(k);
                        out << k << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << '\n';
                    }
                } else {
                    out << "k,k2,re,im\n";
                    for (int k1 = -(g.nyquist(0) - 1); k1 <= g.nyquist(0); ++k1)
                        for (int k2 = -(g.nyquist(1) - 1); k2 <= g.nyquist(1); ++k2, ++rows) {
                            const auto c = s.at(k1, k2);
                            out << k1 << ',' << k2 << ',' << fmt(c.real()) << ','
                                << fmt(c.imag()) << '\n';
                        }
                }
                files.push_back({name, rows});
            }
        }
    } catch (const IoError&) {
        partial = true;
    }

    nlohmann::json manifest;
    manifest["config_text"] = config_text(cfg);
    manifest["status"] = result.status == Termination::completed ? "completed" : "blowup";
    manifest["t_reached"] = result.t_reached;
    manifest["snapshots"] = result.trajectory.snapshots.size();
    manifest["partial"] = partial;
    nlohmann::json file_list = nlohmann::json::array();
    for (const FileRecord& r : files) file_list.push_back({{"name", r.name}, {"rows", r.rows}});
    manifest["files"] = file_list;

    std::ofstream mout(dir / "run.json");
    if (!mout) throw IoError("cannot write run manifest");
    mout << manifest.dump(2) << '\n';
    if (partial) throw IoError("output incomplete: " + failure);
}

int run_simulation(const RunConfig& cfg) {
    try {
        const InitialState init = build_initial(cfg);
        const ModelParams params = cfg.make_params();
        const StepConfig step_cfg = cfg.make_step_config();

        IntegrationResult result;
        if (cfg.model == Model::expansion2d) {
            result = integrate_expansion(ExpansionState{init.f, *init.h1}, params, step_cfg);
        } else if (cfg.model == Model::forchheimer2d) {
            const StripGrid strip = cfg.make_strip();
            result = integrate(init.f, params, step_cfg, nullptr, &strip);
        } else {
            result = integrate(init.f, params, step_cfg);
        }
        write_outputs(result, cfg);
        return result.status == Termination::completed ? exit_ok : exit_blowup;
    } catch (const InfeasibleDataError& e) {
        std::cerr << "infeasible data: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const TruncationError& e) {
        std::cerr << "infeasible data: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_parse;
    }
}

}  // namespace muskat
