#pragma once

#include <complex>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

/// Real nodal samples on a periodic grid. 2D layout is row-major with x1
/// outermost: values[i1 * n2 + i2].
struct Field {
    PeriodicGrid grid;
    std::vector<double> values;

    Field(const PeriodicGrid& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}
    Field(const PeriodicGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw InvalidInputError("field values do not match grid size");
    }

    double& at(int i1, int i2 = 0) {
        return values[static_cast<std::size_t>(i1) * static_cast<std::size_t>(grid.dim() == 2 ? grid.extent(1) : 1) +
                      static_cast<std::size_t>(i2)];
    }
    double at(int i1, int i2 = 0) const {
        return values[static_cast<std::size_t>(i1) * static_cast<std::size_t>(grid.dim() == 2 ? grid.extent(1) : 1) +
                      static_cast<std::size_t>(i2)];
    }
};

/// Complex Fourier coefficients in FFT bin order, same shape as the nodal
/// array. Convention: f(x) = sum_k fhat(k) e^{i k.x} with
/// fhat(k) = (2*pi)^{-d} integral of f e^{-i k.x}.
struct Spectrum {
    PeriodicGrid grid;
    std::vector<std::complex<double>> coeffs;

    explicit Spectrum(const PeriodicGrid& g)
        : grid(g), coeffs(g.size(), std::complex<double>(0.0, 0.0)) {}
    Spectrum(const PeriodicGrid& g, std::vector<std::complex<double>> c)
        : grid(g), coeffs(std::move(c)) {
        if (coeffs.size() != grid.size())
            throw InvalidInputError("spectrum coefficients do not match grid size");
    }

    static std::size_t bin_of(const PeriodicGrid& g, int k1, int k2 = 0) {
        const int n1 = g.extent(0);
        const int i1 = k1 >= 0 ? k1 : k1 + n1;
        if (g.dim() == 1) return static_cast<std::size_t>(i1);
        const int n2 = g.extent(1);
        const int i2 = k2 >= 0 ? k2 : k2 + n2;
        return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
               static_cast<std::size_t>(i2);
    }

    std::complex<double>& at(int k1, int k2 = 0) { return coeffs[bin_of(grid, k1, k2)]; }
    std::complex<double> at(int k1, int k2 = 0) const { return coeffs[bin_of(grid, k1, k2)]; }
};

double mean(const Field& f);
double max_abs(const Field& f);
/// L2 norm with the 2*pi-periodic measure: sqrt(integral of f^2).
double l2_norm(const Field& f);
bool all_finite(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& f);

/// Largest deviation from fhat(-k) = conj(fhat(k)) over all bins.
double conjugate_symmetry_defect(const Spectrum& s);

}  // namespace muskat
