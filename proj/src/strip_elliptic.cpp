// Elliptic solves on the truncated strip. Everything is assembled per
// horizontal mode: for kappa = |k| > 0 the solution of
//   u'' - kappa^2 u = bhat,  u'(0) = ghat,  u -> 0 at depth
// is  u(y) = C1 e^{kappa y} - (1/(2 kappa)) [I_low(y) + I_high(y)]  with
//   I_low(y)  = int_{-D}^{y} bhat(s) e^{kappa (s - y)} ds,
//   I_high(y) = int_{y}^{0}  bhat(s) e^{kappa (y - s)} ds,
//   C1 = ghat / kappa - (1/(2 kappa)) int_{-D}^0 bhat(s) e^{kappa s} ds.
// Both kernels decay away from y, so no growing exponential is ever formed.
// The k = 0 mode is fixed by the decay condition together with compatibility:
//   u0(y) = int_{-D}^{y} (y - s) bhat0(s) ds.

#include "muskat/strip_elliptic.hpp"

#include <cmath>

namespace muskat {

namespace {

constexpr double kCompatibilityTol = 1e-10;
// The slowest legitimate profile decays like e^{y}, i.e. to e^{-D} ~ 1.5e-8
// of its scale at the default depth; the moment kernels contribute a further
// e^{-|k| D}. Anything above this is treated as genuinely non-decaying.
constexpr double kTruncationTol = 1e-6;
constexpr double kMeanTol = 1e-12;

// Shared sub-rule for integrating over a partial panel piece.
const QuadratureRule& piece_rule() {
    static const QuadratureRule rule = gauss_legendre(24);
    return rule;
}

// Level-major spectra of all rows of a strip field.
std::vector<std::complex<double>> level_spectra(const StripField& f) {
    const int nv = f.nv();
    const std::size_t nx = f.grid().horizontal().size();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(nv) * nx);
    for (int q = 0; q < nv; ++q) {
        const Spectrum row = transform(f.level(q));
        for (std::size_t bin = 0; bin < nx; ++bin)
            out[static_cast<std::size_t>(q) * nx + bin] = row.coeffs[bin];
    }
    return out;
}

void check_truncation(const StripField& b, const char* who) {
    const double scale = b.max_abs();
    if (scale == 0.0) return;
    if (b.max_abs_level(b.grid().deepest_node()) > kTruncationTol * scale)
        throw TruncationError(std::string(who) +
                              ": source has not decayed at the truncated depth");
}

// Barycentric interpolation of panel values at reference coordinate xi.
std::complex<double> interp_panel(const std::vector<std::complex<double>>& vals,
                                  const QuadratureRule& rule, const std::vector<double>& bw,
                                  double xi) {
    const std::size_t m = rule.nodes.size();
    std::complex<double> num(0.0, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = xi - rule.nodes[j];
        if (std::abs(d) < 1e-14) return vals[j];
        const double w = bw[j] / d;
        num += w * vals[j];
        den += w;
    }
    return num / den;
}

}  // namespace

StripField harmonic_extension(const Field& q, const StripGrid& grid) {
    if (q.grid != grid.horizontal())
        throw InvalidInputError("harmonic_extension: boundary grid mismatch");
    Spectrum qhat = transform(q);
    const double mean_tol = kMeanTol * std::max(1.0, max_abs(q));
    if (std::abs(qhat.coeffs[0]) > mean_tol)
        throw InfeasibleDataError("harmonic_extension: Neumann data must have zero mean",
                                  std::abs(qhat.coeffs[0]));
    Spectrum trace(q.grid);
    for (std::size_t bin = 1; bin < trace.coeffs.size(); ++bin) {
        const double kappa = std::abs(q.grid.wavenumber(0, static_cast<int>(bin)));
        if (kappa > 0.0) trace.coeffs[bin] = qhat.coeffs[bin] / kappa;
    }
    return StripField::harmonic(grid, trace);
}

StripField harmonic_extension_dirichlet(const Field& phi0, const StripGrid& grid) {
    if (phi0.grid != grid.horizontal())
        throw InvalidInputError("harmonic_extension_dirichlet: boundary grid mismatch");
    return StripField::harmonic(grid, transform(phi0));
}

StripField forchheimer_source(const StripField& upsilon, double lambda) {
    const StripGrid& grid = upsilon.grid();
    const PeriodicGrid& hg = grid.horizontal();
    const int nv = upsilon.nv();
    const int nx = upsilon.nx();

    // Assemble nodal first and second derivatives level by level.
    StripField dx(grid), dy(grid), dxx(grid), dxy(grid), dyy(grid);
    if (upsilon.is_harmonic()) {
        const Spectrum& trace = upsilon.harmonic_trace();
        for (int q = 0; q < nv; ++q) {
            const double y = grid.node(q);
            Spectrum sdx(hg), sdy(hg), sdxx(hg), sdxy(hg), sdyy(hg);
            for (std::size_t bin = 0; bin < trace.coeffs.size(); ++bin) {
                const int k = hg.wavenumber(0, static_cast<int>(bin));
                const double kappa = std::abs(k);
                const std::complex<double> c = trace.coeffs[bin] * std::exp(kappa * y);
                const std::complex<double> ik(0.0, static_cast<double>(k));
                sdx.coeffs[bin] = ik * c;
                sdy.coeffs[bin] = kappa * c;
                sdxx.coeffs[bin] = ik * ik * c;
                sdxy.coeffs[bin] = ik * kappa * c;
                sdyy.coeffs[bin] = kappa * kappa * c;
            }
            dx.set_level(q, inverse_transform(sdx));
            dy.set_level(q, inverse_transform(sdy));
            dxx.set_level(q, inverse_transform(sdxx));
            dxy.set_level(q, inverse_transform(sdxy));
            dyy.set_level(q, inverse_transform(sdyy));
        }
    } else {
        dy = vertical_derivative(upsilon);
        dyy = vertical_derivative(dy);
        for (int q = 0; q < nv; ++q) {
            const Field row = upsilon.level(q);
            dx.set_level(q, d_dx(row));
            dxx.set_level(q, d_dx(d_dx(row)));
            dxy.set_level(q, d_dx(dy.level(q)));
        }
    }

    double grad_scale = 0.0;
    for (int q = 0; q < nv; ++q)
        for (int ix = 0; ix < nx; ++ix)
            grad_scale = std::max(grad_scale, std::hypot(dx.at(ix, q), dy.at(ix, q)));
    const double eps = 1e-13 * grad_scale;

    StripField out(grid);
    for (int q = 0; q < nv; ++q) {
        for (int ix = 0; ix < nx; ++ix) {
            const double ux = dx.at(ix, q), uy = dy.at(ix, q);
            const double mag = std::hypot(ux, uy);
            double value = 0.0;
            if (mag > eps) {
                value = (2.0 * ux * uy * dxy.at(ix, q) + ux * ux * dxx.at(ix, q) +
                         uy * uy * dyy.at(ix, q)) /
                        mag;
            }
            if (!upsilon.is_harmonic())
                value += mag * (dxx.at(ix, q) + dyy.at(ix, q));
            out.at(ix, q) = lambda * value;
        }
    }
    return out;
}

Field boundary_flux(const StripField& upsilon, double lambda) {
    const Spectrum& trace = upsilon.harmonic_trace();
    const PeriodicGrid& hg = trace.grid;
    Spectrum sdx(hg), sdy(hg);
    for (std::size_t bin = 0; bin < trace.coeffs.size(); ++bin) {
        const int k = hg.wavenumber(0, static_cast<int>(bin));
        sdx.coeffs[bin] = std::complex<double>(0.0, static_cast<double>(k)) * trace.coeffs[bin];
        sdy.coeffs[bin] = static_cast<double>(std::abs(k)) * trace.coeffs[bin];
    }
    const Field ux = inverse_transform(sdx);
    const Field uy = inverse_transform(sdy);
    Field g(hg);
    for (std::size_t i = 0; i < g.values.size(); ++i)
        g.values[i] = lambda * std::hypot(ux.values[i], uy.values[i]) * uy.values[i];
    return g;
}

Field boundary_flux_closed(const Field& f, double nu, double lambda) {
    // q = d_x(f - nu d_x^2 f), all derivatives spectral.
    const Field q = inverse_transform(apply_multiplier(transform(f), [nu](const WaveVec& k) {
        const double kk = static_cast<double>(k[0]);
        return std::complex<double>(0.0, kk + nu * kk * kk * kk);
    }));
    const Field hq = hilbert(q);
    Field g(f.grid);
    for (std::size_t i = 0; i < g.values.size(); ++i)
        g.values[i] = lambda * std::hypot(hq.values[i], q.values[i]) * q.values[i];
    return g;
}

Field source_moment(const StripField& b) {
    check_truncation(b, "source_moment");
    const StripGrid& grid = b.grid();
    const PeriodicGrid& hg = grid.horizontal();
    const std::vector<std::complex<double>> bhat = level_spectra(b);
    const std::size_t nx = hg.size();
    Spectrum moment(hg);
    for (std::size_t bin = 0; bin < nx; ++bin) {
        const double kappa = std::abs(hg.wavenumber(0, static_cast<int>(bin)));
        std::complex<double> acc(0.0, 0.0);
        for (int q = 0; q < grid.vertical_count(); ++q)
            acc += grid.weight(q) * bhat[static_cast<std::size_t>(q) * nx + bin] *
                   std::exp(kappa * grid.node(q));
        moment.coeffs[bin] = 0.5 * acc;
    }
    return inverse_transform(moment);
}

PoissonSolution solve_poisson(const StripField& b, const Field& g) {
    const StripGrid& grid = b.grid();
    const PeriodicGrid& hg = grid.horizontal();
    if (g.grid != hg) throw InvalidInputError("solve_poisson: boundary grid mismatch");

    PoissonSolution sol(grid);
    sol.bhat_ = level_spectra(b);
    const Spectrum ghat = transform(g);
    const std::size_t nx = hg.size();
    const int nv = grid.vertical_count();

    sol.moment_.assign(nx, std::complex<double>(0.0, 0.0));
    for (std::size_t bin = 0; bin < nx; ++bin) {
        const double kappa = std::abs(hg.wavenumber(0, static_cast<int>(bin)));
        std::complex<double> acc(0.0, 0.0);
        for (int q = 0; q < nv; ++q)
            acc += grid.weight(q) * sol.bhat_[static_cast<std::size_t>(q) * nx + bin] *
                   std::exp(kappa * grid.node(q));
        sol.moment_[bin] = acc;
    }

    // Compatibility: the domain integral of b must equal the boundary
    // integral of g (this is what fixes the k = 0 mode under decay).
    const double int_b = PeriodicGrid::two_pi() * sol.moment_[0].real();
    const double int_g = PeriodicGrid::two_pi() * ghat.coeffs[0].real();
    const double scale = std::max({1.0, PeriodicGrid::two_pi() * grid.depth() * b.max_abs(),
                                   PeriodicGrid::two_pi() * max_abs(g)});
    if (std::abs(int_b - int_g) > kCompatibilityTol * scale)
        throw InfeasibleDataError(
            "solve_poisson: compatibility condition violated, residual " +
                std::to_string(int_b - int_g),
            int_b - int_g);
    check_truncation(b, "solve_poisson");

    sol.c1_.assign(nx, std::complex<double>(0.0, 0.0));
    for (std::size_t bin = 1; bin < nx; ++bin) {
        const double kappa = std::abs(hg.wavenumber(0, static_cast<int>(bin)));
        if (kappa == 0.0) continue;
        sol.c1_[bin] = ghat.coeffs[bin] / kappa - sol.moment_[bin] / (2.0 * kappa);
    }
    return sol;
}

StripField solve_poisson_strip(const StripField& b, const Field& g) {
    return solve_poisson(b, g).field();
}

Field rebalance_mean_mode(const StripField& b, const Field& g) {
    const StripGrid& grid = b.grid();
    if (g.grid != grid.horizontal())
        throw InvalidInputError("rebalance_mean_mode: boundary grid mismatch");
    double int_b = 0.0;
    for (int q = 0; q < grid.vertical_count(); ++q)
        int_b += grid.weight(q) * mean(b.level(q));
    Field out = g;
    const double shift = int_b - mean(g);
    for (double& v : out.values) v += shift;
    return out;
}

std::complex<double> PoissonSolution::lower_integral(int bin, double kappa, double y) const {
    const std::size_t nx = grid_.horizontal().size();
    const int m = grid_.nodes_per_panel();
    const int panel = grid_.panel_of(y);
    std::complex<double> acc(0.0, 0.0);

    // Full panels strictly below y.
    for (int p = panel + 1; p < grid_.panel_count(); ++p)
        for (int j = 0; j < m; ++j) {
            const int q = p * m + j;
            acc += grid_.weight(q) * bhat_[static_cast<std::size_t>(q) * nx +
                                           static_cast<std::size_t>(bin)] *
                   std::exp(kappa * (grid_.node(q) - y));
        }

    // Piece [panel_lower, y] of the straddled panel.
    const double top = grid_.panel_upper(panel), bottom = grid_.panel_lower(panel);
    const double mid = 0.5 * (top + bottom), half = 0.5 * (top - bottom);
    const double xi_y = (y - mid) / half;
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        vals[static_cast<std::size_t>(j)] =
            bhat_[static_cast<std::size_t>(panel * m + j) * nx + static_cast<std::size_t>(bin)];
    const QuadratureRule& sub = piece_rule();
    const double pm = 0.5 * (xi_y + (-1.0)), ph = 0.5 * (xi_y - (-1.0));
    for (std::size_t t = 0; t < sub.nodes.size(); ++t) {
        const double xi = pm + ph * sub.nodes[t];
        const double s = mid + half * xi;
        acc += ph * half * sub.weights[t] *
               interp_panel(vals, grid_.panel_rule(), grid_.barycentric_weights(), xi) *
               std::exp(kappa * (s - y));
    }
    return acc;
}

std::complex<double> PoissonSolution::upper_integral(int bin, double kappa, double y) const {
    const std::size_t nx = grid_.horizontal().size();
    const int m = grid_.nodes_per_panel();
    const int panel = grid_.panel_of(y);
    std::complex<double> acc(0.0, 0.0);

    for (int p = 0; p < panel; ++p)
        for (int j = 0; j < m; ++j) {
            const int q = p * m + j;
            acc += grid_.weight(q) * bhat_[static_cast<std::size_t>(q) * nx +
                                           static_cast<std::size_t>(bin)] *
                   std::exp(kappa * (y - grid_.node(q)));
        }

    const double top = grid_.panel_upper(panel), bottom = grid_.panel_lower(panel);
    const double mid = 0.5 * (top + bottom), half = 0.5 * (top - bottom);
    const double xi_y = (y - mid) / half;
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        vals[static_cast<std::size_t>(j)] =
            bhat_[static_cast<std::size_t>(panel * m + j) * nx + static_cast<std::size_t>(bin)];
    const QuadratureRule& sub = piece_rule();
    const double pm = 0.5 * (1.0 + xi_y), ph = 0.5 * (1.0 - xi_y);
    for (std::size_t t = 0; t < sub.nodes.size(); ++t) {
        const double xi = pm + ph * sub.nodes[t];
        const double s = mid + half * xi;
        acc += ph * half * sub.weights[t] *
               interp_panel(vals, grid_.panel_rule(), grid_.barycentric_weights(), xi) *
               std::exp(kappa * (y - s));
    }
    return acc;
}

std::complex<double> PoissonSolution::eval_mode(int bin, double y) const {
    const PeriodicGrid& hg = grid_.horizontal();
    const double kappa = std::abs(hg.wavenumber(0, bin));
    if (kappa == 0.0) {
        // u0(y) = int_{-D}^{y} (y - s) bhat0(s) ds, decay-normalized.
        const std::size_t nx = hg.size();
        const int m = grid_.nodes_per_panel();
        const int panel = grid_.panel_of(y);
        std::complex<double> acc(0.0, 0.0);
        for (int p = panel + 1; p < grid_.panel_count(); ++p)
            for (int j = 0; j < m; ++j) {
                const int q = p * m + j;
                acc += grid_.weight(q) * bhat_[static_cast<std::size_t>(q) * nx] *
                       (y - grid_.node(q));
            }
        const double top = grid_.panel_upper(panel), bottom = grid_.panel_lower(panel);
        const double mid = 0.5 * (top + bottom), half = 0.5 * (top - bottom);
        const double xi_y = (y - mid) / half;
        std::vector<std::complex<double>> vals(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            vals[static_cast<std::size_t>(j)] =
                bhat_[static_cast<std::size_t>(panel * m + j) * nx];
        const QuadratureRule& sub = piece_rule();
        const double pm = 0.5 * (xi_y - 1.0), ph = 0.5 * (xi_y + 1.0);
        for (std::size_t t = 0; t < sub.nodes.size(); ++t) {
            const double xi = pm + ph * sub.nodes[t];
            const double s = mid + half * xi;
            acc += ph * half * sub.weights[t] *
                   interp_panel(vals, grid_.panel_rule(), grid_.barycentric_weights(), xi) *
                   (y - s);
        }
        return acc;
    }
    return c1_[static_cast<std::size_t>(bin)] * std::exp(kappa * y) -
           (lower_integral(bin, kappa, y) + upper_integral(bin, kappa, y)) / (2.0 * kappa);
}

StripField PoissonSolution::field() const {
    const PeriodicGrid& hg = grid_.horizontal();
    StripField out(grid_);
    for (int q = 0; q < grid_.vertical_count(); ++q) {
        Spectrum row(hg);
        for (std::size_t bin = 0; bin < row.coeffs.size(); ++bin)
            row.coeffs[bin] = eval_mode(static_cast<int>(bin), grid_.node(q));
        out.set_level(q, inverse_transform(row));
    }
    return out;
}

std::vector<double> PoissonSolution::level_values(double y) const {
    const PeriodicGrid& hg = grid_.horizontal();
    Spectrum row(hg);
    for (std::size_t bin = 0; bin < row.coeffs.size(); ++bin)
        row.coeffs[bin] = eval_mode(static_cast<int>(bin), y);
    return inverse_transform(row).values;
}

Field PoissonSolution::boundary_value() const {
    const PeriodicGrid& hg = grid_.horizontal();
    Spectrum trace(hg);
    for (std::size_t bin = 0; bin < trace.coeffs.size(); ++bin) {
        const double kappa = std::abs(hg.wavenumber(0, static_cast<int>(bin)));
        if (kappa == 0.0) {
            // Full-interval form of u0(0).
            std::complex<double> acc(0.0, 0.0);
            for (int q = 0; q < grid_.vertical_count(); ++q)
                acc += grid_.weight(q) * bhat_[static_cast<std::size_t>(q) * hg.size()] *
                       (0.0 - grid_.node(q));
            trace.coeffs[bin] = acc;
        } else {
            trace.coeffs[bin] = c1_[bin] - moment_[bin] / (2.0 * kappa);
        }
    }
    return inverse_transform(trace);
}

Field PoissonSolution::boundary_dx() const {
    const Field u0 = boundary_value();
    return d_dx(u0);
}

TraceIdentity commutator_trace_identity(const Field& h, const Field& phi_boundary,
                                        const StripGrid& grid) {
    if (h.grid != grid.horizontal() || phi_boundary.grid != grid.horizontal())
        throw InvalidInputError("commutator_trace_identity: grid mismatch");

    const Field dxh = d_dx(h);
    const Field dxxh = d_dx(dxh);
    const Spectrum phihat = transform(phi_boundary);
    const PeriodicGrid& hg = grid.horizontal();

    // b = d_y[2 (d_x h)(d_x phi) + (d_x^2 h) phi]; phi is harmonic so every
    // vertical derivative is the per-mode |k| multiplier at each level.
    StripField b(grid);
    for (int q = 0; q < grid.vertical_count(); ++q) {
        const double y = grid.node(q);
        Spectrum sdy(hg), sdxy(hg);
        for (std::size_t bin = 0; bin < phihat.coeffs.size(); ++bin) {
            const int k = hg.wavenumber(0, static_cast<int>(bin));
            const double kappa = std::abs(k);
            const std::complex<double> c = phihat.coeffs[bin] * std::exp(kappa * y);
            sdy.coeffs[bin] = kappa * c;
            sdxy.coeffs[bin] = std::complex<double>(0.0, static_cast<double>(k)) * kappa * c;
        }
        const Field row = 2.0 * product(dxh, inverse_transform(sdxy)) +
                          product(dxxh, inverse_transform(sdy));
        b.set_level(q, row);
    }

    const Field dxphi0 = d_dx(phi_boundary);
    const Field g = rebalance_mean_mode(b, product(dxh, dxphi0));

    const PoissonSolution sol = solve_poisson(b, g);
    return TraceIdentity{sol.boundary_dx(), d_dx(hilbert_commutator(h, dxphi0))};
}

}  // namespace muskat
