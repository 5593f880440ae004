#include "muskat/strip.hpp"

#include "muskat/spectral.hpp"

#include <cmath>

namespace muskat {

QuadratureRule gauss_legendre(int m) {
    if (m < 1) throw InvalidInputError("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.assign(static_cast<std::size_t>(m), 0.0);
    rule.weights.assign(static_cast<std::size_t>(m), 0.0);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev initial guess, then Newton on P_m.
        double x = std::cos(PeriodicGrid::pi() * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
    return rule;
}

StripGrid::StripGrid(const PeriodicGrid& horizontal, double depth, int panels,
                     int nodes_per_panel, double grading)
    : horizontal_(horizontal),
      depth_(depth),
      panels_(panels),
      nodes_per_panel_(nodes_per_panel) {
    if (horizontal_.dim() != 1)
        throw InvalidInputError("StripGrid: horizontal grid must be one-dimensional");
    if (depth_ <= 0.0) throw InvalidInputError("StripGrid: depth must be positive");
    if (panels_ < 1 || nodes_per_panel_ < 2)
        throw InvalidInputError("StripGrid: need at least 1 panel and 2 nodes per panel");
    if (grading < 1.0) throw InvalidInputError("StripGrid: grading ratio must be >= 1");

    panel_rule_ = gauss_legendre(nodes_per_panel_);

    bary_.assign(static_cast<std::size_t>(nodes_per_panel_), 1.0);
    for (int i = 0; i < nodes_per_panel_; ++i)
        for (int j = 0; j < nodes_per_panel_; ++j)
            if (j != i)
                bary_[static_cast<std::size_t>(i)] /=
                    (panel_rule_.nodes[static_cast<std::size_t>(i)] -
                     panel_rule_.nodes[static_cast<std::size_t>(j)]);

    // Widths w0 * grading^p from the top; w0 chosen so they sum to depth.
    const double w0 = grading == 1.0
                          ? depth_ / panels_
                          : depth_ * (grading - 1.0) / (std::pow(grading, panels_) - 1.0);
    bounds_.assign(static_cast<std::size_t>(panels_) + 1, 0.0);
    double width = w0;
    for (int p = 0; p < panels_; ++p) {
        bounds_[static_cast<std::size_t>(p) + 1] = bounds_[static_cast<std::size_t>(p)] - width;
        width *= grading;
    }
    bounds_.back() = -depth_;  // absorb rounding

    nodes_.reserve(static_cast<std::size_t>(vertical_count()));
    weights_.reserve(static_cast<std::size_t>(vertical_count()));
    for (int p = 0; p < panels_; ++p) {
        const double top = panel_upper(p), bottom = panel_lower(p);
        const double mid = 0.5 * (top + bottom), half = 0.5 * (top - bottom);
        for (int j = 0; j < nodes_per_panel_; ++j) {
            nodes_.push_back(mid + half * panel_rule_.nodes[static_cast<std::size_t>(j)]);
            weights_.push_back(half * panel_rule_.weights[static_cast<std::size_t>(j)]);
        }
    }
}

int StripGrid::panel_of(double y) const {
    if (y > 0.0 || y < -depth_) throw InvalidInputError("StripGrid: depth out of range");
    for (int p = 0; p < panels_; ++p)
        if (y >= panel_lower(p)) return p;
    return panels_ - 1;
}

bool StripGrid::operator==(const StripGrid& other) const {
    return horizontal_ == other.horizontal_ && depth_ == other.depth_ &&
           panels_ == other.panels_ && nodes_per_panel_ == other.nodes_per_panel_ &&
           bounds_ == other.bounds_;
}

StripField::StripField(const StripGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() !=
        static_cast<std::size_t>(grid_.vertical_count()) * grid_.horizontal().size())
        throw InvalidInputError("StripField: values do not match grid shape");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidInputError("StripField: non-finite values");
}

StripField StripField::harmonic(const StripGrid& grid, const Spectrum& trace) {
    if (trace.grid != grid.horizontal())
        throw InvalidInputError("StripField::harmonic: trace grid mismatch");
    StripField out(grid);
    const int nv = grid.vertical_count();
    for (int q = 0; q < nv; ++q) {
        const double y = grid.node(q);
        Spectrum level(trace.grid);
        for (std::size_t bin = 0; bin < level.coeffs.size(); ++bin) {
            const double kappa = std::abs(trace.grid.wavenumber(0, static_cast<int>(bin)));
            level.coeffs[bin] = trace.coeffs[bin] * std::exp(kappa * y);
        }
        out.set_level(q, inverse_transform(level));
    }
    out.trace_ = trace;
    return out;
}

Field StripField::level(int q) const {
    Field row(grid_.horizontal());
    const std::size_t offset = static_cast<std::size_t>(q) * static_cast<std::size_t>(nx());
    for (int ix = 0; ix < nx(); ++ix)
        row.values[static_cast<std::size_t>(ix)] = values_[offset + static_cast<std::size_t>(ix)];
    return row;
}

void StripField::set_level(int q, const Field& row) {
    if (row.grid != grid_.horizontal())
        throw InvalidInputError("StripField::set_level: row grid mismatch");
    const std::size_t offset = static_cast<std::size_t>(q) * static_cast<std::size_t>(nx());
    for (int ix = 0; ix < nx(); ++ix)
        values_[offset + static_cast<std::size_t>(ix)] = row.values[static_cast<std::size_t>(ix)];
}

double StripField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double StripField::max_abs_level(int q) const {
    double m = 0.0;
    const std::size_t offset = static_cast<std::size_t>(q) * static_cast<std::size_t>(nx());
    for (int ix = 0; ix < nx(); ++ix)
        m = std::max(m, std::abs(values_[offset + static_cast<std::size_t>(ix)]));
    return m;
}

const Spectrum& StripField::harmonic_trace() const {
    if (!trace_) throw InvalidInputError("StripField: no harmonic boundary modes attached");
    return *trace_;
}

StripField vertical_derivative(const StripField& f) {
    const StripGrid& grid = f.grid();
    const int m = grid.nodes_per_panel();
    const QuadratureRule& rule = grid.panel_rule();
    const std::vector<double>& bw = grid.barycentric_weights();

    // Reference differentiation matrix on [-1, 1] from barycentric weights.
    std::vector<double> dmat(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double diag = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const double d = (bw[static_cast<std::size_t>(j)] / bw[static_cast<std::size_t>(i)]) /
                             (rule.nodes[static_cast<std::size_t>(i)] -
                              rule.nodes[static_cast<std::size_t>(j)]);
            dmat[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = d;
            diag -= d;
        }
        dmat[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(i)] = diag;
    }

    StripField out(grid);
    const int nx = f.nx();
    for (int p = 0; p < grid.panel_count(); ++p) {
        const double half = 0.5 * (grid.panel_upper(p) - grid.panel_lower(p));
        for (int ix = 0; ix < nx; ++ix) {
            for (int i = 0; i < m; ++i) {
                double acc = 0.0;
                for (int j = 0; j < m; ++j)
                    acc += dmat[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] *
                           f.at(ix, p * m + j);
                out.at(ix, p * m + i) = acc / half;
            }
        }
    }
    return out;
}

}  // namespace muskat
