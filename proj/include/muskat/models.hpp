#pragma once

#include "muskat/strip_elliptic.hpp"

namespace muskat {

enum class Model { linear2d, darcy2d, forchheimer2d, darcy3d_finite, darcy3d_infinite, expansion2d };

enum class DepthMode { finite, infinite };

/// The three dimensionless numbers plus model/depth selectors.
struct ModelParams {
    Model model = Model::darcy2d;
    double nu = 0.0;      // Bond number, >= 0
    double lambda = 0.0;  // Forchheimer coefficient, >= 0
    double sigma = 1.0;   // steepness, > 0 (expansion bookkeeping only)
    DepthMode depth = DepthMode::infinite;

    void validate() const;
};

/// Order-0 and order-1 elevation terms of the steepness expansion.
struct ExpansionState {
    Field h0;
    Field h1;
};

struct ExpansionRhs {
    Field dh0;
    Field dh1;
};

enum class Darcy2dForm { commutator, expanded, commutator_lambda };

/// -nu Lam^3 h - Lam h.
Field rhs_linear2d(const Field& h, double nu);

/// Quadratic interface model. The commutator form is the production path;
/// the other two are algebraically equivalent rewritings kept for the
/// equivalence tests. Products are dealiased identically in all three.
Field rhs_darcy2d(const Field& f, double nu, Darcy2dForm form = Darcy2dForm::commutator);

/// Coupled order-(0,1) system: dh0 is linear, dh1 adds the commutator
/// coupling driven by h0.
ExpansionRhs rhs_expansion(const ExpansionState& state, double nu);

/// Closed-form inertial model: Darcy part plus the boundary-flux and
/// source-moment corrections, one harmonic extension and one quadrature.
Field rhs_forchheimer_closed(const Field& f, double nu, double lambda, const StripGrid& strip);

/// Same model through two elliptic solves on the strip; the independent
/// cross-check for the closed path.
Field rhs_forchheimer_system(const Field& f, double nu, double lambda, const StripGrid& strip);

/// Two-dimensional interface model, finite depth (G0 = |xi| tanh|xi|) or
/// infinite depth (Lam).
Field rhs_darcy3d(const Field& f, double nu, DepthMode depth);

}  // namespace muskat
