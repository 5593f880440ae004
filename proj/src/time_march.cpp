#include "muskat/time_march.hpp"

#include <cmath>

namespace muskat {

namespace {

// Stage values above this bound count as blown up. The bound is far below
// the overflow threshold so a quadratic right-hand side of a guarded state
// can never itself overflow mid-evaluation.
constexpr double kStageGuard = 1e50;

using State = std::vector<Spectrum>;

bool spectra_ok(const State& state) {
    for (const Spectrum& s : state)
        for (const auto& c : s.coeffs) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
            if (std::abs(c.real()) > kStageGuard || std::abs(c.imag()) > kStageGuard)
                return false;
        }
    return true;
}

// Nonlinear remainder N(f) = rhs(f) - l f, evaluated per component.
State nonlinear(const State& state, const ModelParams& params, const LinearSymbol& symbol,
                const StripGrid* strip) {
    State out;
    out.reserve(state.size());
    switch (params.model) {
        case Model::linear2d: {
            for (const Spectrum& s : state) out.emplace_back(Spectrum(s.grid));
            return out;
        }
        case Model::darcy2d: {
            const Field f = inverse_transform(state[0]);
            out.push_back(transform(rhs_darcy2d(f, params.nu)));
            break;
        }
        case Model::forchheimer2d: {
            if (strip == nullptr)
                throw InvalidInputError("forchheimer2d stepping requires a strip grid");
            const Field f = inverse_transform(state[0]);
            out.push_back(transform(rhs_forchheimer_closed(f, params.nu, params.lambda, *strip)));
            break;
        }
        case Model::darcy3d_finite:
        case Model::darcy3d_infinite: {
            const Field f = inverse_transform(state[0]);
            const DepthMode depth =
                params.model == Model::darcy3d_finite ? DepthMode::finite : DepthMode::infinite;
            out.push_back(transform(rhs_darcy3d(f, params.nu, depth)));
            break;
        }
        case Model::expansion2d: {
            const ExpansionState es{inverse_transform(state[0]), inverse_transform(state[1])};
            const ExpansionRhs rhs = rhs_expansion(es, params.nu);
            out.push_back(transform(rhs.dh0));
            out.push_back(transform(rhs.dh1));
            break;
        }
    }
    for (std::size_t c = 0; c < out.size(); ++c)
        for (std::size_t i = 0; i < out[c].coeffs.size(); ++i)
            out[c].coeffs[i] -= symbol.values[i] * state[c].coeffs[i];
    return out;
}

State axpy(const State& a, double c, const State& b) {
    State out = a;
    for (std::size_t j = 0; j < out.size(); ++j)
        for (std::size_t i = 0; i < out[j].coeffs.size(); ++i)
            out[j].coeffs[i] += c * b[j].coeffs[i];
    return out;
}

void scale_by(State& s, const std::vector<double>& factor) {
    for (Spectrum& comp : s)
        for (std::size_t i = 0; i < comp.coeffs.size(); ++i) comp.coeffs[i] *= factor[i];
}

State step_state(const State& state, const ModelParams& params, const LinearSymbol& symbol,
                 double dt, Scheme scheme, const StripGrid* strip, double t_now) {
    std::vector<double> efull(symbol.values.size()), ehalf(symbol.values.size());
    for (std::size_t i = 0; i < symbol.values.size(); ++i) {
        efull[i] = std::exp(symbol.values[i] * dt);
        ehalf[i] = std::exp(symbol.values[i] * 0.5 * dt);
    }

    const auto check = [&](const State& s) {
        if (!spectra_ok(s))
            throw BlowUpError("time step produced NaN or overflow", t_now);
    };

    if (scheme == Scheme::if_rk2) {
        // Integrating-factor midpoint rule.
        const State k1 = nonlinear(state, params, symbol, strip);
        State mid = axpy(state, 0.5 * dt, k1);
        scale_by(mid, ehalf);
        check(mid);
        State k2 = nonlinear(mid, params, symbol, strip);
        scale_by(k2, ehalf);
        State next = state;
        scale_by(next, efull);
        next = axpy(next, dt, k2);
        check(next);
        return next;
    }

    // Classical fourth-order integrating-factor RK.
    const State k1 = nonlinear(state, params, symbol, strip);
    State s1 = axpy(state, 0.5 * dt, k1);
    scale_by(s1, ehalf);
    check(s1);
    const State k2 = nonlinear(s1, params, symbol, strip);

    State half_state = state;
    scale_by(half_state, ehalf);
    State s2 = axpy(half_state, 0.5 * dt, k2);
    check(s2);
    const State k3 = nonlinear(s2, params, symbol, strip);

    State s3 = state;
    scale_by(s3, efull);
    State k3h = k3;
    scale_by(k3h, ehalf);
    s3 = axpy(s3, dt, k3h);
    check(s3);
    const State k4 = nonlinear(s3, params, symbol, strip);

    State next = state;
    scale_by(next, efull);
    State k1w = k1;
    scale_by(k1w, efull);
    State k2w = k2;
    scale_by(k2w, ehalf);
    State k3w = k3;
    scale_by(k3w, ehalf);
    next = axpy(next, dt / 6.0, k1w);
    next = axpy(next, dt / 3.0, k2w);
    next = axpy(next, dt / 3.0, k3w);
    next = axpy(next, dt / 6.0, k4);
    check(next);
    return next;
}

Snapshot make_snapshot(double t, const State& state, const ModelParams& params) {
    Snapshot snap;
    snap.t = t;
    for (const Spectrum& s : state) snap.fields.push_back(inverse_transform(s));
    if (params.model == Model::expansion2d) {
        const Field combined =
            params.sigma * snap.fields[0] + (params.sigma * params.sigma) * snap.fields[1];
        snap.diag = diagnostics_of(combined);
    } else {
        snap.diag = diagnostics_of(snap.fields[0]);
    }
    return snap;
}

IntegrationResult integrate_state(State state, const ModelParams& params, const StepConfig& cfg,
                                  const Observer& observer, const StripGrid* strip) {
    params.validate();
    cfg.validate();

    IntegrationResult result;
    const auto record = [&](double t) {
        Snapshot snap = make_snapshot(t, state, params);
        if (observer) observer(snap);
        result.trajectory.snapshots.push_back(std::move(snap));
    };

    record(0.0);
    result.t_reached = 0.0;
    if (cfg.t_end <= 0.0) return result;

    double t = 0.0;
    long step_index = 0;
    const LinearSymbol symbol = linear_symbol(params, state[0].grid);
    while (t < cfg.t_end - 1e-12 * cfg.t_end) {
        const double dt = std::min(cfg.dt, cfg.t_end - t);
        try {
            state = step_state(state, params, symbol, dt, cfg.scheme, strip, t);
        } catch (const BlowUpError&) {
            result.status = Termination::blow_up;
            result.t_reached = t;
            return result;
        }
        t += dt;
        ++step_index;
        const bool last = t >= cfg.t_end - 1e-12 * cfg.t_end;
        if (step_index % cfg.snapshot_stride == 0 || last) record(t);
        result.t_reached = t;
    }
    return result;
}

}  // namespace

void StepConfig::validate() const {
    if (dt <= 0.0) throw InvalidInputError("StepConfig: dt must be positive");
    if (t_end < 0.0) throw InvalidInputError("StepConfig: t_end must be nonnegative");
    if (t_end > 0.0 && dt > t_end + 1e-15)
        throw InvalidInputError("StepConfig: dt must not exceed t_end");
    if (snapshot_stride < 1) throw InvalidInputError("StepConfig: stride must be >= 1");
}

LinearSymbol linear_symbol(const ModelParams& params, const PeriodicGrid& grid) {
    const bool needs_2d =
        params.model == Model::darcy3d_finite || params.model == Model::darcy3d_infinite;
    if (needs_2d && grid.dim() != 2)
        throw InvalidInputError("linear_symbol: model requires a 2D grid");
    if (!needs_2d && grid.dim() != 1)
        throw InvalidInputError("linear_symbol: model requires a 1D grid");

    LinearSymbol symbol{grid, std::vector<double>(grid.size(), 0.0)};
    const int n1 = grid.extent(0);
    const int n2 = grid.dim() == 2 ? grid.extent(1) : 1;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2, ++idx) {
            const double k1 = grid.wavenumber(0, i1);
            const double k2 = grid.dim() == 2 ? grid.wavenumber(1, i2) : 0.0;
            const double r = std::sqrt(k1 * k1 + k2 * k2);
            double l = 0.0;
            switch (params.model) {
                case Model::linear2d:
                case Model::darcy2d:
                case Model::forchheimer2d:
                case Model::expansion2d:
                    l = -(r + params.nu * r * r * r);
                    break;
                case Model::darcy3d_finite:
                    l = -r * std::tanh(r) * (1.0 + params.nu * r * r);
                    break;
                case Model::darcy3d_infinite:
                    l = -r * (1.0 + params.nu * r * r);
                    break;
            }
            symbol.values[idx] = l;
        }
    }
    return symbol;
}

Diagnostics diagnostics_of(const Field& f) {
    Diagnostics d;
    d.mean = mean(f);
    d.l2 = l2_norm(f);
    if (f.grid.dim() == 1) {
        d.max_slope = max_abs(d_dx(f, 0));
    } else {
        const Field fx = d_dx(f, 0), fy = d_dx(f, 1);
        double m = 0.0;
        for (std::size_t i = 0; i < fx.values.size(); ++i)
            m = std::max(m, std::hypot(fx.values[i], fy.values[i]));
        d.max_slope = m;
    }
    return d;
}

Field step(const Field& f, const ModelParams& params, const LinearSymbol& symbol, double dt,
           Scheme scheme, const StripGrid* strip) {
    if (dt <= 0.0) throw InvalidInputError("step: dt must be positive");
    if (symbol.grid != f.grid) throw InvalidInputError("step: symbol grid mismatch");
    State state{transform(f)};
    if (params.model == Model::expansion2d)
        throw InvalidInputError("step: use integrate_expansion for the coupled pair");
    state = step_state(state, params, symbol, dt, scheme, strip, 0.0);
    return inverse_transform(state[0]);
}

IntegrationResult integrate(const Field& f0, const ModelParams& params, const StepConfig& cfg,
                            const Observer& observer, const StripGrid* strip) {
    if (params.model == Model::expansion2d)
        throw InvalidInputError("integrate: use integrate_expansion for the coupled pair");
    return integrate_state(State{transform(f0)}, params, cfg, observer, strip);
}

IntegrationResult integrate_expansion(const ExpansionState& state, const ModelParams& params,
                                      const StepConfig& cfg, const Observer& observer) {
    if (params.model != Model::expansion2d)
        throw InvalidInputError("integrate_expansion: params.model must be expansion2d");
    if (state.h0.grid != state.h1.grid)
        throw InvalidInputError("integrate_expansion: grid mismatch");
    return integrate_state(State{transform(state.h0), transform(state.h1)}, params, cfg,
                           observer, nullptr);
}

}  // namespace muskat
