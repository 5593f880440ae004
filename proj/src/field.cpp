#include "muskat/field.hpp"

#include <cmath>

namespace muskat {

double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.values.size());
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    const double cell = f.grid.dim() == 1
                            ? PeriodicGrid::two_pi() / f.grid.extent(0)
                            : PeriodicGrid::two_pi() * PeriodicGrid::two_pi() /
                                  (static_cast<double>(f.grid.extent(0)) * f.grid.extent(1));
    return std::sqrt(s * cell);
}

bool all_finite(const Field& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

Field operator+(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw InvalidInputError("field grids differ");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw InvalidInputError("field grids differ");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
    return out;
}

Field operator*(double c, const Field& f) {
    Field out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = c * f.values[i];
    return out;
}

double conjugate_symmetry_defect(const Spectrum& s) {
    const PeriodicGrid& g = s.grid;
    double worst = 0.0;
    const int n1 = g.extent(0);
    const int n2 = g.dim() == 2 ? g.extent(1) : 1;
    for (int i1 = 0; i1 < n1; ++i1) {
        const int j1 = i1 == 0 ? 0 : n1 - i1;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = i2 == 0 ? 0 : n2 - i2;
            const auto a = s.coeffs[static_cast<std::size_t>(i1) * n2 + i2];
            const auto b = s.coeffs[static_cast<std::size_t>(j1) * n2 + j2];
            worst = std::max(worst, std::abs(a - std::conj(b)));
        }
    }
    return worst;
}

}  // namespace muskat
