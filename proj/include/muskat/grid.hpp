#pragma once

#include <array>
#include <cstddef>

#include "muskat/errors.hpp"

namespace muskat {

/// Uniform collocation grid on the 1- or 2-torus with period 2*pi per
/// direction. Collocation points are x_j = -pi + 2*pi*j/n; the dual set per
/// direction is the standard one of an n-point grid: 0, +-1, ...,
/// +-(n/2 - 1) plus the Nyquist index n/2.
class PeriodicGrid {
  public:
    static PeriodicGrid line(int n) { return PeriodicGrid(1, n, 1); }
    static PeriodicGrid torus(int n1, int n2) { return PeriodicGrid(2, n1, n2); }

    int dim() const { return dim_; }
    int extent(int axis) const { return n_[static_cast<std::size_t>(axis)]; }

    /// Total number of collocation points (and spectral bins).
    std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(n_[0]);
        if (dim_ == 2) s *= static_cast<std::size_t>(n_[1]);
        return s;
    }

    double point(int axis, int index) const {
        const int n = extent(axis);
        return -pi() + two_pi() * static_cast<double>(index) / static_cast<double>(n);
    }

    /// Signed wavenumber of spectral bin `index` along `axis`
    /// (0, 1, ..., n/2, -(n/2-1), ..., -1 in bin order).
    int wavenumber(int axis, int index) const {
        const int n = extent(axis);
        return index <= n / 2 ? index : index - n;
    }

    int nyquist(int axis) const { return extent(axis) / 2; }

    bool operator==(const PeriodicGrid& other) const {
        return dim_ == other.dim_ && n_ == other.n_;
    }
    bool operator!=(const PeriodicGrid& other) const { return !(*this == other); }

    static constexpr double pi() { return 3.14159265358979323846; }
    static constexpr double two_pi() { return 2.0 * pi(); }

  private:
    PeriodicGrid(int dim, int n1, int n2) : dim_(dim), n_{n1, n2} {
        if (dim_ < 1 || dim_ > 2) throw InvalidInputError("grid dimension must be 1 or 2");
        for (int axis = 0; axis < dim_; ++axis) {
            const int n = n_[static_cast<std::size_t>(axis)];
            if (n < 8 || n % 2 != 0)
                throw InvalidInputError("grid extent must be even and >= 8");
        }
        if (dim_ == 1) n_[1] = 1;
    }

    int dim_;
    std::array<int, 2> n_;
};

}  // namespace muskat
