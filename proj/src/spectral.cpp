// Spectral operators on periodic grids, backed by FFTW complex transforms.
//
// The grid starts at -pi, so forward coefficients pick up a (-1)^(k1+k2)
// phase relative to FFTW's 0-based DFT. Plans use FFTW_ESTIMATE so that
// planning is deterministic run-to-run, and FFTW_UNALIGNED so the new-array
// execute interface accepts ordinary std::vector storage.

#include "muskat/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace muskat {

namespace {

class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const PeriodicGrid& g, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const Key key{g.extent(0), g.dim() == 2 ? g.extent(1) : 0, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        // Planned in place and unaligned so the new-array execute interface
        // accepts ordinary vector storage used in place.
        std::vector<fftw_complex> scratch(g.size());
        fftw_plan plan;
        if (g.dim() == 1) {
            plan = fftw_plan_dft_1d(g.extent(0), scratch.data(), scratch.data(), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        } else {
            plan = fftw_plan_dft_2d(g.extent(0), g.extent(1), scratch.data(), scratch.data(),
                                    sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const PeriodicGrid& g, int sign, std::vector<std::complex<double>>& buf) {
    fftw_plan plan = PlanCache::instance().get(g, sign);
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, raw, raw);
}

// (-1)^(i1+i2) over bins; bin parity equals wavenumber parity for even n.
inline double bin_phase(int i1, int i2) { return ((i1 + i2) & 1) ? -1.0 : 1.0; }

void for_each_bin(const PeriodicGrid& g, const std::function<void(std::size_t, int, int)>& fn) {
    const int n1 = g.extent(0);
    const int n2 = g.dim() == 2 ? g.extent(1) : 1;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2, ++idx) fn(idx, i1, i2);
}

}  // namespace

Spectrum transform(const Field& f) {
    if (!all_finite(f)) throw InvalidInputError("transform: non-finite field values");
    const PeriodicGrid& g = f.grid;
    std::vector<std::complex<double>> buf(g.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = f.values[i];
    execute(g, FFTW_FORWARD, buf);

    const double norm = 1.0 / static_cast<double>(g.size());
    Spectrum out(g);
    const int ny1 = g.nyquist(0);
    const int ny2 = g.dim() == 2 ? g.nyquist(1) : -1;
    for_each_bin(g, [&](std::size_t idx, int i1, int i2) {
        if (i1 == ny1 || i2 == ny2) {
            out.coeffs[idx] = 0.0;
        } else {
            out.coeffs[idx] = buf[idx] * (norm * bin_phase(i1, i2));
        }
    });
    return out;
}

Field inverse_transform(const Spectrum& s) {
    const PeriodicGrid& g = s.grid;
    std::vector<std::complex<double>> buf(g.size());
    for_each_bin(g, [&](std::size_t idx, int i1, int i2) {
        const auto c = s.coeffs[idx];
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidInputError("inverse_transform: non-finite coefficients");
        buf[idx] = c * bin_phase(i1, i2);
    });
    execute(g, FFTW_BACKWARD, buf);

    Field out(g);
    for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    return out;
}

Spectrum apply_multiplier(const Spectrum& s,
                          const std::function<std::complex<double>(const WaveVec&)>& symbol) {
    const PeriodicGrid& g = s.grid;
    Spectrum out(g);
    for_each_bin(g, [&](std::size_t idx, int i1, int i2) {
        const WaveVec k{g.wavenumber(0, i1), g.dim() == 2 ? g.wavenumber(1, i2) : 0};
        const auto sym = symbol(k);
        if (!std::isfinite(sym.real()) || !std::isfinite(sym.imag()))
            throw InvalidInputError("apply_multiplier: symbol not finite on grid modes");
        out.coeffs[idx] = sym * s.coeffs[idx];
    });
    return out;
}

namespace {

Field multiply_field(const Field& f,
                     const std::function<std::complex<double>(const WaveVec&)>& symbol) {
    return inverse_transform(apply_multiplier(transform(f), symbol));
}

double wave_norm(const WaveVec& k) {
    return std::sqrt(static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1]);
}

}  // namespace

Field hilbert(const Field& f) {
    if (f.grid.dim() != 1)
        throw InvalidInputError("hilbert: defined on 1D grids only");
    return multiply_field(f, [](const WaveVec& k) {
        const double s = k[0] > 0 ? 1.0 : (k[0] < 0 ? -1.0 : 0.0);
        return std::complex<double>(0.0, -s);
    });
}

Field calderon(const Field& f, double s) {
    if (s < 0.0) throw InvalidInputError("calderon: unsupported negative power");
    return multiply_field(f, [s](const WaveVec& k) {
        return std::complex<double>(std::pow(wave_norm(k), s), 0.0);
    });
}

Field d_dx(const Field& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim())
        throw InvalidInputError("d_dx: direction invalid for grid dimension");
    return multiply_field(f, [axis](const WaveVec& k) {
        return std::complex<double>(0.0, static_cast<double>(k[static_cast<std::size_t>(axis)]));
    });
}

Field laplacian(const Field& f) {
    return multiply_field(f, [](const WaveVec& k) {
        const double r = wave_norm(k);
        return std::complex<double>(-r * r, 0.0);
    });
}

Field dn0(const Field& f) {
    return multiply_field(f, [](const WaveVec& k) {
        const double r = wave_norm(k);
        return std::complex<double>(r * std::tanh(r), 0.0);
    });
}

Field hilbert_commutator(const Field& f, const Field& g) {
    if (f.grid != g.grid) throw InvalidInputError("hilbert_commutator: grid mismatch");
    return product(f, hilbert(g)) - hilbert(product(f, g));
}

Spectrum dealias(const Spectrum& s) {
    const PeriodicGrid& g = s.grid;
    Spectrum out = s;
    const int cut1 = g.extent(0) / 3;
    const int cut2 = g.dim() == 2 ? g.extent(1) / 3 : 0;
    for_each_bin(g, [&](std::size_t idx, int i1, int i2) {
        const int k1 = g.wavenumber(0, i1);
        const int k2 = g.dim() == 2 ? g.wavenumber(1, i2) : 0;
        if (std::abs(k1) > cut1 || (g.dim() == 2 && std::abs(k2) > cut2)) out.coeffs[idx] = 0.0;
    });
    return out;
}

Field product(const Field& f, const Field& g) {
    if (f.grid != g.grid) throw InvalidInputError("product: grid mismatch");
    Field pointwise(f.grid);
    for (std::size_t i = 0; i < pointwise.values.size(); ++i)
        pointwise.values[i] = f.values[i] * g.values[i];
    return inverse_transform(dealias(transform(pointwise)));
}

}  // namespace muskat
