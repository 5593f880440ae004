#pragma once

#include <array>
#include <functional>

#include "muskat/field.hpp"

namespace muskat {

/// Forward transform. Nyquist bins are forced to zero so that every
/// odd-symbol operator (Hilbert, d/dx1) maps real fields to real fields.
Spectrum transform(const Field& f);

/// Inverse transform (real part of the complex synthesis).
Field inverse_transform(const Spectrum& s);

/// Wavevector passed to multiplier symbols; second component is 0 in 1D.
using WaveVec = std::array<int, 2>;

/// Applies a diagonal Fourier multiplier: out(k) = symbol(k) * in(k).
/// Conjugate symmetry is preserved whenever symbol(-k) = conj(symbol(k)).
Spectrum apply_multiplier(const Spectrum& s,
                          const std::function<std::complex<double>(const WaveVec&)>& symbol);

/// Hilbert transform, symbol -i sgn(k). 1D grids only.
Field hilbert(const Field& f);

/// |xi|^s multiplier (Euclidean norm in 2D). Requires s >= 0.
Field calderon(const Field& f, double s);

/// Spectral derivative along `axis`, symbol i k_axis.
Field d_dx(const Field& f, int axis = 0);

/// Symbol -|xi|^2.
Field laplacian(const Field& f);

/// Flat-bottom Dirichlet-Neumann symbol |xi| tanh|xi|; annihilates the mean.
Field dn0(const Field& f);

/// [f, H] g = f * Hg - H(f * g), products dealiased. 1D grids only.
Field hilbert_commutator(const Field& f, const Field& g);

/// Zeroes every coefficient with any |k_i| > floor(n_i / 3) (2/3 rule).
Spectrum dealias(const Spectrum& s);

/// Pointwise product followed by dealiasing.
Field product(const Field& f, const Field& g);

}  // namespace muskat
