#pragma once

#include "muskat/spectral.hpp"
#include "muskat/strip.hpp"

namespace muskat {

/// Decaying harmonic field with Neumann data q at y = 0: per-mode profile
/// qhat(k)/|k| e^{|k| y}. Rejects data whose mean exceeds tolerance, since a
/// decaying solution only exists for zero-mean q.
StripField harmonic_extension(const Field& q, const StripGrid& grid);

/// Decaying harmonic field with Dirichlet trace phi0 at y = 0.
StripField harmonic_extension_dirichlet(const Field& phi0, const StripGrid& grid);

/// lambda * div(|grad u| grad u) evaluated on the strip. For harmonic input
/// the |grad u| * lap u term is dropped analytically; the gradient-degenerate
/// limit of the 1/|grad u| term is 0 (its numerator is cubic in grad u).
StripField forchheimer_source(const StripField& upsilon, double lambda);

/// lambda |grad u| d_y u at y = 0, from the boundary modes of a harmonic
/// strip field.
Field boundary_flux(const StripField& upsilon, double lambda);

/// Same flux in closed form straight from the elevation:
/// lambda sqrt((Hq)^2 + q^2) q with q = d_x(f - nu d_x^2 f).
Field boundary_flux_closed(const Field& f, double nu, double lambda);

/// Per-mode weighted depth integral (1/2) int_{-D}^0 bhat(k,y) e^{|k| y} dy.
/// The k = 0 value is computed but is annihilated downstream by the Hilbert
/// transform. Errors if b has not decayed at the truncated depth.
Field source_moment(const StripField& b);

/// Solution of  lap u = b on the strip,  d_y u = g at y = 0,  u -> 0 at
/// depth, assembled per horizontal mode from the explicit two-exponential
/// kernel with vertical integrals done by the grid quadrature. Retains the
/// per-mode data so traces and off-node values come from the closed-form
/// kernels rather than from differencing nodal output.
class PoissonSolution {
  public:
    const StripGrid& grid() const { return grid_; }

    /// Nodal solution values.
    StripField field() const;
    /// u(., 0).
    Field boundary_value() const;
    /// d_x u(., 0).
    Field boundary_dx() const;
    /// Row of solution values at arbitrary depth y in [-D, 0].
    std::vector<double> level_values(double y) const;

  private:
    friend PoissonSolution solve_poisson(const StripField& b, const Field& g);
    explicit PoissonSolution(const StripGrid& grid)
        : grid_(grid), bhat_(), c1_(), moment_() {}

    std::complex<double> eval_mode(int bin, double y) const;
    /// int_{-D}^{y} bhat(s) e^{kappa (s - y)} ds  and  int_y^0 bhat(s) e^{kappa (y - s)} ds,
    /// full panels by their native rule, the straddled panel by sub-quadrature
    /// of the panel interpolant.
    std::complex<double> lower_integral(int bin, double kappa, double y) const;
    std::complex<double> upper_integral(int bin, double kappa, double y) const;

    StripGrid grid_;
    std::vector<std::complex<double>> bhat_;    // level-major bins: bhat_[q * nx + bin]
    std::vector<std::complex<double>> c1_;      // per bin
    std::vector<std::complex<double>> moment_;  // per bin: int bhat e^{kappa y} dy
};

PoissonSolution solve_poisson(const StripField& b, const Field& g);

/// Convenience wrapper returning the nodal solution field.
StripField solve_poisson_strip(const StripField& b, const Field& g);

/// For solves whose k = 0 output mode is discarded downstream (everything
/// that exits through d_x or H): returns g with its mean shifted onto the
/// discrete domain integral of b. Pairs that balance exactly on the
/// untruncated strip can miss the solver's consistency guard by the
/// truncated tail or by sampling error near gradient-degenerate points;
/// the shift touches only the inert mean mode.
Field rebalance_mean_mode(const StripField& b, const Field& g);

/// Both sides of the boundary-trace identity for the quadratic coupling: the
/// elliptic route solves  lap X = d_y[2 (d_x h)(d_x phi) + (d_x^2 h) phi],
/// d_y X = (d_x h)(d_x phi) at y = 0, and takes d_x X at the boundary; the
/// commutator route evaluates d_x([h, H] d_x phi). They must agree when phi
/// is a decaying harmonic field.
struct TraceIdentity {
    Field elliptic;
    Field commutator;
};

TraceIdentity commutator_trace_identity(const Field& h, const Field& phi_boundary,
                                        const StripGrid& grid);

}  // namespace muskat
