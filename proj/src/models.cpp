#include "muskat/models.hpp"

#include <cmath>

namespace muskat {

namespace {

constexpr double kMeanTol = 1e-12;

// Inputs must be zero-mean for the symbol calculus to be well defined.
// Rounding-level means are projected out, anything larger is rejected.
Field require_zero_mean(const Field& f, const char* who) {
    if (!all_finite(f)) throw InvalidInputError(std::string(who) + ": non-finite input");
    const double m = mean(f);
    const double scale = std::max(1.0, max_abs(f));
    if (std::abs(m) > kMeanTol * scale)
        throw InvalidInputError(std::string(who) + ": input mean exceeds tolerance");
    if (m == 0.0) return f;
    Field out = f;
    for (double& v : out.values) v -= m;
    return out;
}

Field lambda3(const Field& f) { return calderon(f, 3.0); }

// [Lam, f] g = Lam(f g) - f Lam(g), products dealiased.
Field calderon_commutator(const Field& f, const Field& g) {
    return calderon(product(f, g), 1.0) - product(f, calderon(g, 1.0));
}

// div(f grad w), term by term with dealiased products.
Field div_f_grad(const Field& f, const Field& w) {
    Field out = d_dx(product(f, d_dx(w, 0)), 0);
    for (int axis = 1; axis < f.grid.dim(); ++axis)
        out = out + d_dx(product(f, d_dx(w, axis)), axis);
    return out;
}

}  // namespace

void ModelParams::validate() const {
    if (nu < 0.0) throw InvalidInputError("ModelParams: nu must be nonnegative");
    if (lambda < 0.0) throw InvalidInputError("ModelParams: lambda must be nonnegative");
    if (sigma <= 0.0) throw InvalidInputError("ModelParams: sigma must be positive");
}

Field rhs_linear2d(const Field& h, double nu) {
    const Field z = require_zero_mean(h, "rhs_linear2d");
    return -1.0 * (nu * lambda3(z) + calderon(z, 1.0));
}

Field rhs_darcy2d(const Field& f, double nu, Darcy2dForm form) {
    const Field z = require_zero_mean(f, "rhs_darcy2d");
    const Field linear = rhs_linear2d(z, nu);
    switch (form) {
        case Darcy2dForm::commutator:
            return linear + d_dx(hilbert_commutator(z, linear));
        case Darcy2dForm::expanded: {
            const Field term_nu = calderon(product(z, lambda3(z)), 1.0) -
                                  d_dx(product(z, d_dx(d_dx(d_dx(z)))));
            return linear + nu * term_nu + d_dx(product(z, d_dx(z))) +
                   calderon(product(z, calderon(z, 1.0)), 1.0);
        }
        case Darcy2dForm::commutator_lambda: {
            const Field dz = d_dx(z);
            const Field term_nu =
                calderon_commutator(z, lambda3(z)) - product(dz, d_dx(d_dx(dz)));
            return linear + nu * term_nu + product(dz, dz) +
                   calderon_commutator(z, calderon(z, 1.0));
        }
    }
    throw InvalidInputError("rhs_darcy2d: unknown form");
}

ExpansionRhs rhs_expansion(const ExpansionState& state, double nu) {
    const Field h0 = require_zero_mean(state.h0, "rhs_expansion");
    const Field h1 = require_zero_mean(state.h1, "rhs_expansion");
    if (h0.grid != h1.grid) throw InvalidInputError("rhs_expansion: grid mismatch");
    const Field l0 = rhs_linear2d(h0, nu);
    return ExpansionRhs{l0, rhs_linear2d(h1, nu) + d_dx(hilbert_commutator(h0, l0))};
}

Field rhs_forchheimer_closed(const Field& f, double nu, double lambda, const StripGrid& strip) {
    const Field z = require_zero_mean(f, "rhs_forchheimer_closed");
    const Field darcy = rhs_darcy2d(z, nu, Darcy2dForm::commutator);

    const Field q = inverse_transform(apply_multiplier(transform(z), [nu](const WaveVec& k) {
        const double kk = static_cast<double>(k[0]);
        return std::complex<double>(0.0, kk + nu * kk * kk * kk);
    }));
    const StripField upsilon = harmonic_extension(q, strip);
    const StripField b = forchheimer_source(upsilon, lambda);
    const Field moment = source_moment(b);
    const Field g = boundary_flux_closed(z, nu, lambda);

    // Boundary trace of the flux potential: -H(g - 2B). The per-mode kernel
    // solve gives  ik uhat(k,0) = i sgn(k) (ghat - 2 Bhat), B the half-moment.
    return darcy - hilbert(g - 2.0 * moment);
}

Field rhs_forchheimer_system(const Field& f, double nu, double lambda, const StripGrid& strip) {
    const Field z = require_zero_mean(f, "rhs_forchheimer_system");
    const Field darcy = rhs_darcy2d(z, nu, Darcy2dForm::commutator);

    const Field q = inverse_transform(apply_multiplier(transform(z), [nu](const WaveVec& k) {
        const double kk = static_cast<double>(k[0]);
        return std::complex<double>(0.0, kk + nu * kk * kk * kk);
    }));
    const StripField upsilon = harmonic_extension(q, strip);
    const StripField b = forchheimer_source(upsilon, lambda);
    // The continuum pair balances by the divergence theorem; the sampled pair
    // can miss by the truncated tail, so rebalance the inert mean mode.
    const Field g = rebalance_mean_mode(b, boundary_flux(upsilon, lambda));
    const PoissonSolution phi = solve_poisson(b, g);
    return darcy + phi.boundary_dx();
}

Field rhs_darcy3d(const Field& f, double nu, DepthMode depth) {
    if (f.grid.dim() != 2)
        throw InvalidInputError("rhs_darcy3d: requires a two-dimensional grid");
    const Field z = require_zero_mean(f, "rhs_darcy3d");
    const auto G = [depth](const Field& x) {
        return depth == DepthMode::finite ? dn0(x) : calderon(x, 1.0);
    };
    const Field lap = laplacian(z);
    const Field linear = nu * G(lap) - G(z);
    const Field cubic = G(product(z, G(lap))) + div_f_grad(z, lap);
    const Field quad = G(product(z, G(z))) + div_f_grad(z, z);
    return linear - nu * cubic + quad;
}

}  // namespace muskat
