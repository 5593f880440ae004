#pragma once

#include <optional>
#include <vector>

#include "muskat/field.hpp"

namespace muskat {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int m);

/// Tensor grid for the semi-infinite periodic strip S^1 x (-inf, 0],
/// truncated at y = -D. The vertical rule is composite Gauss-Legendre with
/// panel widths geometrically graded toward y = 0, where the per-mode
/// profiles e^{|k| y} vary fastest.
class StripGrid {
  public:
    StripGrid(const PeriodicGrid& horizontal, double depth = 18.0, int panels = 12,
              int nodes_per_panel = 8, double grading = 1.6);

    const PeriodicGrid& horizontal() const { return horizontal_; }
    double depth() const { return depth_; }
    int panel_count() const { return panels_; }
    int nodes_per_panel() const { return nodes_per_panel_; }
    int vertical_count() const { return panels_ * nodes_per_panel_; }

    /// Node q = p * nodes_per_panel + j; panel 0 touches y = 0, node order
    /// within a panel is ascending in y.
    double node(int q) const { return nodes_[static_cast<std::size_t>(q)]; }
    double weight(int q) const { return weights_[static_cast<std::size_t>(q)]; }

    /// Panel p spans [lower(p), upper(p)] with upper(0) = 0, lower(P-1) = -D.
    double panel_upper(int p) const { return bounds_[static_cast<std::size_t>(p)]; }
    double panel_lower(int p) const { return bounds_[static_cast<std::size_t>(p) + 1]; }
    int panel_of(double y) const;

    int deepest_node() const { return (panels_ - 1) * nodes_per_panel_; }

    const QuadratureRule& panel_rule() const { return panel_rule_; }
    /// Barycentric weights of the panel rule's nodes, for interpolation.
    const std::vector<double>& barycentric_weights() const { return bary_; }

    bool operator==(const StripGrid& other) const;

  private:
    PeriodicGrid horizontal_;
    double depth_;
    int panels_;
    int nodes_per_panel_;
    QuadratureRule panel_rule_;
    std::vector<double> bary_;
    std::vector<double> bounds_;   // panels_ + 1 entries, descending from 0 to -D
    std::vector<double> nodes_;    // panel-major
    std::vector<double> weights_;  // positive, summing to depth
};

/// Real values on a strip grid, stored level-major: values[q * nx + ix].
/// A field created by harmonic extension carries its boundary-mode spectrum;
/// vertical derivatives of such fields follow the per-mode e^{|k| y} law
/// exactly instead of being differenced.
class StripField {
  public:
    explicit StripField(const StripGrid& grid, double fill = 0.0)
        : grid_(grid),
          values_(static_cast<std::size_t>(grid.vertical_count()) * grid.horizontal().size(),
                  fill) {}
    StripField(const StripGrid& grid, std::vector<double> values);

    /// Builds the field whose level rows are Re sum_k trace(k) e^{|k| y + i k x}.
    static StripField harmonic(const StripGrid& grid, const Spectrum& trace);

    const StripGrid& grid() const { return grid_; }
    int nx() const { return static_cast<int>(grid_.horizontal().size()); }
    int nv() const { return grid_.vertical_count(); }

    double& at(int ix, int q) {
        return values_[static_cast<std::size_t>(q) * static_cast<std::size_t>(nx()) +
                       static_cast<std::size_t>(ix)];
    }
    double at(int ix, int q) const {
        return values_[static_cast<std::size_t>(q) * static_cast<std::size_t>(nx()) +
                       static_cast<std::size_t>(ix)];
    }

    Field level(int q) const;
    void set_level(int q, const Field& row);

    const std::vector<double>& values() const { return values_; }
    double max_abs() const;
    double max_abs_level(int q) const;

    bool is_harmonic() const { return trace_.has_value(); }
    const Spectrum& harmonic_trace() const;

  private:
    StripGrid grid_;
    std::vector<double> values_;
    std::optional<Spectrum> trace_;
};

/// d/dy of nodal strip data by differentiating the per-panel interpolant.
StripField vertical_derivative(const StripField& f);

}  // namespace muskat
