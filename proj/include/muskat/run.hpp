#pragma once

#include <filesystem>
#include <optional>

#include "muskat/config.hpp"

namespace muskat {

/// Exit codes of the simulate front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_parse = 2,
    exit_infeasible = 3,
    exit_blowup = 4,
    exit_io = 5,
};

/// Initial elevation built from the config's mode list or nodal-values file.
/// For expansion2d the pair is (h0, 0).
struct InitialState {
    Field f;
    std::optional<Field> h1;
};

InitialState build_initial(const RunConfig& cfg);

/// Writes diagnostics.csv, snap_NNNNNN.csv, spectrum_NNNNNN.csv and the
/// run.json manifest into cfg.output_dir. All floats use 17 significant
/// digits so reruns are byte-identical.
void write_outputs(const IntegrationResult& result, const RunConfig& cfg);

/// Executes a parsed config end to end; returns a process exit code. On
/// blow-up the partial trajectory is still written and exit_blowup returned.
int run_simulation(const RunConfig& cfg);

}  // namespace muskat
