#pragma once

#include <functional>

#include "muskat/models.hpp"

namespace muskat {

/// Per-mode linear symbol of the selected model; l(0) = 0, l <= 0, even in xi.
struct LinearSymbol {
    PeriodicGrid grid;
    std::vector<double> values;  // FFT bin order
};

LinearSymbol linear_symbol(const ModelParams& params, const PeriodicGrid& grid);

enum class Scheme { if_rk2, if_rk4 };

struct StepConfig {
    double dt = 0.0;
    double t_end = 0.0;
    Scheme scheme = Scheme::if_rk2;
    int snapshot_stride = 10;

    void validate() const;
};

struct Diagnostics {
    double mean = 0.0;
    double l2 = 0.0;
    double max_slope = 0.0;
};

Diagnostics diagnostics_of(const Field& f);

struct Snapshot {
    double t = 0.0;
    std::vector<Field> fields;  // one entry, or (h0, h1) for the expansion pair
    Diagnostics diag;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
};

enum class Termination { completed, blow_up };

struct IntegrationResult {
    Trajectory trajectory;
    Termination status = Termination::completed;
    double t_reached = 0.0;
};

using Observer = std::function<void(const Snapshot&)>;

/// One integrating-factor Runge-Kutta step: the diagonal linear part is
/// propagated by exact exponentials, the nonlinearity by explicit RK stages
/// on the conjugated variable. With a vanishing nonlinearity the step is the
/// exact flow. Throws BlowUpError on NaN/overflow in any stage.
Field step(const Field& f, const ModelParams& params, const LinearSymbol& symbol, double dt,
           Scheme scheme, const StripGrid* strip = nullptr);

/// Advances f0 to t_end, recording a snapshot at t = 0, every
/// snapshot_stride-th step, and at the final time. On blow-up the partial
/// trajectory is returned with the time reached.
IntegrationResult integrate(const Field& f0, const ModelParams& params, const StepConfig& cfg,
                            const Observer& observer = nullptr,
                            const StripGrid* strip = nullptr);

/// Same integrator over the coupled (h0, h1) pair, which shares one linear
/// symbol. Snapshot diagnostics are taken on sigma h0 + sigma^2 h1.
IntegrationResult integrate_expansion(const ExpansionState& state, const ModelParams& params,
                                      const StepConfig& cfg, const Observer& observer = nullptr);

}  // namespace muskat
