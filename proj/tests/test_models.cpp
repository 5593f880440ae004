#include <doctest.h>

#include "muskat/models.hpp"
#include "oracles.hpp"

using namespace muskat;

namespace {

Field cosine(const PeriodicGrid& g, int k, double a = 1.0, double phase = 0.0) {
    Field f(g);
    for (int j = 0; j < g.extent(0); ++j)
        f.values[static_cast<std::size_t>(j)] = a * std::cos(k * g.point(0, j) + phase);
    return f;
}

double sup_diff(const Field& a, const Field& b) { return max_abs(a - b); }

const std::array<Darcy2dForm, 3> kForms{Darcy2dForm::commutator, Darcy2dForm::expanded,
                                        Darcy2dForm::commutator_lambda};

}  // namespace

TEST_SUITE("models") {

TEST_CASE("linear model is diagonal with symbol -(|k| + nu |k|^3)") {
    const auto g = PeriodicGrid::line(64);
    SUBCASE("single mode") {
        for (int k : {1, 2, 5}) {
            const double nu = 0.3, a = 0.7;
            const double factor = -(std::abs(k) + nu * std::pow(std::abs(k), 3));
            CHECK(sup_diff(rhs_linear2d(cosine(g, k, a), nu), factor * cosine(g, k, a)) <
                  2e-12 * std::abs(factor * a));
        }
    }
    SUBCASE("zero field") { CHECK(max_abs(rhs_linear2d(Field(g), 0.5)) == 0.0); }
    SUBCASE("spectrum of random data transforms mode by mode") {
        std::mt19937 rng(3);
        const Field h = oracle::random_band_limited(g, 20, rng);
        const Spectrum lhs = transform(rhs_linear2d(h, 0.2));
        const Spectrum hh = transform(h);
        double worst = 0.0;
        for (int k = -31; k <= 31; ++k) {
            const double r = std::abs(k);
            const auto expect = -(r + 0.2 * r * r * r) * hh.at(k);
            worst = std::max(worst, std::abs(lhs.at(k) - expect));
        }
        CHECK(worst < 1e-11 * max_abs(h));
    }
}

TEST_CASE("darcy2d: quadratic term vanishes on a single mode") {
    const auto g = PeriodicGrid::line(64);
    const double nu = 0.4, a = 0.9, phase = 0.7;
    for (auto form : kForms) {
        const Field f = cosine(g, 3, a, phase);
        const double factor = -(3.0 + nu * 27.0);
        CHECK(sup_diff(rhs_darcy2d(f, nu, form), factor * f) < 1e-11);
    }
    CHECK(max_abs(rhs_darcy2d(Field(g), 0.1)) == 0.0);
}

TEST_CASE("darcy2d two-mode value is fixed by the convolution oracle") {
    const double nu = 0.1;
    for (int n : {16, 64}) {
        const auto g = PeriodicGrid::line(n);
        const Field f = cosine(g, 1) + cosine(g, 2, 0.5);
        oracle::Modes1 fm;
        fm[1] = fm[-1] = 0.5;
        fm[2] = fm[-2] = 0.25;
        const Field expect = oracle::to_field(oracle::darcy_rhs(fm, nu, n), g);
        for (auto form : kForms)
            CHECK(sup_diff(rhs_darcy2d(f, nu, form), expect) < 1e-12);
    }
}

TEST_CASE("darcy2d three forms agree pairwise on random band-limited fields") {
    const auto g = PeriodicGrid::line(64);
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = oracle::random_band_limited(g, 10, rng);
        const Field a = rhs_darcy2d(f, 0.15, Darcy2dForm::commutator);
        const Field b = rhs_darcy2d(f, 0.15, Darcy2dForm::expanded);
        const Field c = rhs_darcy2d(f, 0.15, Darcy2dForm::commutator_lambda);
        const double scale = max_abs(a);
        CHECK(sup_diff(a, b) < 1e-12 * scale);
        CHECK(sup_diff(b, c) < 1e-12 * scale);
        CHECK(sup_diff(a, c) < 1e-12 * scale);
    }
}

TEST_CASE("darcy2d rejects a field with significant mean") {
    const auto g = PeriodicGrid::line(32);
    Field f = cosine(g, 1);
    for (double& v : f.values) v += 0.25;
    CHECK_THROWS_AS(rhs_darcy2d(f, 0.1), InvalidInputError);
}

TEST_CASE("darcy2d nonlinear part is quadratically homogeneous") {
    const auto g = PeriodicGrid::line(64);
    std::mt19937 rng(37);
    const Field f = oracle::random_band_limited(g, 8, rng);
    const Field n1 = rhs_darcy2d(f, 0.2) - rhs_linear2d(f, 0.2);
    const Field f2 = 2.0 * f;
    const Field n2 = rhs_darcy2d(f2, 0.2) - rhs_linear2d(f2, 0.2);
    CHECK(sup_diff(n2, 4.0 * n1) < 1e-12 * std::max(1.0, max_abs(n2)));
}

TEST_CASE("every rhs output has zero spatial mean") {
    const auto g = PeriodicGrid::line(64);
    const StripGrid strip(g);
    std::mt19937 rng(43);
    const Field f = oracle::random_band_limited(g, 10, rng);
    const auto g2 = PeriodicGrid::torus(32, 32);
    const Field f2 = oracle::random_band_limited(g2, 6, rng);

    CHECK(std::abs(mean(rhs_linear2d(f, 0.3))) < 1e-13 * max_abs(f));
    for (auto form : kForms)
        CHECK(std::abs(mean(rhs_darcy2d(f, 0.3, form))) < 1e-13 * max_abs(f));
    CHECK(std::abs(mean(rhs_forchheimer_closed(f, 0.05, 0.3, strip))) < 1e-13 * max_abs(f));
    CHECK(std::abs(mean(rhs_darcy3d(f2, 0.1, DepthMode::finite))) < 1e-13 * max_abs(f2));
    CHECK(std::abs(mean(rhs_darcy3d(f2, 0.1, DepthMode::infinite))) < 1e-13 * max_abs(f2));
}

TEST_CASE("expansion hierarchy") {
    const auto g = PeriodicGrid::line(64);
    const double nu = 0.2;
    SUBCASE("single-mode h0 has vanishing coupling") {
        const ExpansionState s{cosine(g, 1, 0.8), Field(g)};
        const ExpansionRhs r = rhs_expansion(s, nu);
        CHECK(sup_diff(r.dh0, rhs_linear2d(s.h0, nu)) < 1e-13);
        CHECK(max_abs(r.dh1) < 1e-12);
    }
    SUBCASE("h0 = 0 reduces dh1 to the linear operator") {
        std::mt19937 rng(11);
        const Field h1 = oracle::random_band_limited(g, 8, rng);
        const ExpansionRhs r = rhs_expansion(ExpansionState{Field(g), h1}, nu);
        CHECK(sup_diff(r.dh1, rhs_linear2d(h1, nu)) < 1e-11 * max_abs(h1));
    }
    SUBCASE("coupling equals the quadratic part of the full model") {
        const Field h0 = cosine(g, 1) + cosine(g, 2, 0.5);
        const ExpansionRhs r = rhs_expansion(ExpansionState{h0, Field(g)}, nu);
        const Field quad = rhs_darcy2d(h0, nu) - rhs_linear2d(h0, nu);
        CHECK(sup_diff(r.dh1, quad) < 1e-12);
    }
}

TEST_CASE("forchheimer single-mode value against the mode-wise solve") {
    // For f = a cos x, nu = 0 the flux problem is solvable by hand: source
    // -lambda a^2 e^{2y} sin x, boundary flux -lambda a^2 sin x. The mode-1
    // problem  u'' - u = beta e^{2y}, u'(0) = beta  (beta = i lambda a^2 / 2)
    // has decaying solution (beta/3) e^{2y} + (beta/3) e^{y} with trace
    // 2 beta / 3, so d_x Phi(., 0) = -(2/3) lambda a^2 cos x.
    const auto g = PeriodicGrid::line(64);
    const StripGrid strip(g);
    const double a = 0.3, lambda = 0.8;
    const Field f = cosine(g, 1, a);
    const Field expect = -a * cosine(g, 1) - (2.0 / 3.0) * lambda * a * a * cosine(g, 1);
    const Field closed = rhs_forchheimer_closed(f, 0.0, lambda, strip);
    const Field system = rhs_forchheimer_system(f, 0.0, lambda, strip);
    CHECK(sup_diff(closed, system) < 1e-10);
    CHECK(sup_diff(closed, expect) < 1e-10 * max_abs(expect));
    CHECK(sup_diff(system, expect) < 1e-10 * max_abs(expect));
}

TEST_CASE("forchheimer trivial cases") {
    const auto g = PeriodicGrid::line(32);
    const StripGrid strip(g);
    SUBCASE("zero field") {
        CHECK(max_abs(rhs_forchheimer_closed(Field(g), 0.1, 0.5, strip)) == 0.0);
    }
    SUBCASE("lambda = 0 collapses to darcy on both paths") {
        const Field f = cosine(g, 1, 0.4) + cosine(g, 3, 0.2);
        const Field darcy = rhs_darcy2d(f, 0.2);
        CHECK(sup_diff(rhs_forchheimer_closed(f, 0.2, 0.0, strip), darcy) < 1e-13);
        CHECK(sup_diff(rhs_forchheimer_system(f, 0.2, 0.0, strip), darcy) < 1e-14);
    }
}

TEST_CASE("forchheimer correction is linear in lambda") {
    const auto g = PeriodicGrid::line(64);
    const StripGrid strip(g);
    std::mt19937 rng(53);
    const Field f = oracle::random_band_limited(g, 8, rng, 0.5);
    const Field darcy = rhs_darcy2d(f, 0.1);
    const Field c1 = rhs_forchheimer_closed(f, 0.1, 0.4, strip) - darcy;
    const Field c2 = rhs_forchheimer_closed(f, 0.1, 0.8, strip) - darcy;
    CHECK(sup_diff(c2, 2.0 * c1) < 1e-12 * std::max(1.0, max_abs(c2)));
}

TEST_CASE("forchheimer closed and system paths agree on random fields") {
    const auto g = PeriodicGrid::line(64);
    const StripGrid strip(g);
    std::mt19937 rng(59);
    for (int trial = 0; trial < 5; ++trial) {
        const Field f = oracle::random_band_limited(g, 10, rng, 0.5);
        const Field closed = rhs_forchheimer_closed(f, 0.05, 0.3, strip);
        const Field system = rhs_forchheimer_system(f, 0.05, 0.3, strip);
        CHECK(sup_diff(closed, system) < 1e-6 * std::max(1.0, max_abs(closed)));
    }
}

TEST_CASE("darcy3d single-mode hand value, finite depth") {
    const auto g = PeriodicGrid::torus(32, 32);
    const double a = 0.6;
    Field f(g), expect(g);
    for (int i1 = 0; i1 < 32; ++i1)
        for (int i2 = 0; i2 < 32; ++i2) {
            const double x1 = g.point(0, i1);
            f.at(i1, i2) = a * std::cos(x1);
            expect.at(i1, i2) = -a * std::tanh(1.0) * std::cos(x1) +
                                a * a * (std::tanh(1.0) * std::tanh(2.0) - 1.0) *
                                    std::cos(2.0 * x1);
        }
    CHECK(sup_diff(rhs_darcy3d(f, 0.0, DepthMode::finite), expect) < 1e-12);
    CHECK(max_abs(rhs_darcy3d(Field(g), 0.3, DepthMode::finite)) == 0.0);
}

TEST_CASE("darcy3d single mode, infinite depth: exact linear part, doubled-mode quadratic") {
    const auto g = PeriodicGrid::torus(32, 32);
    const double a = 0.5, nu = 0.2;
    Field f(g);
    for (int i1 = 0; i1 < 32; ++i1)
        for (int i2 = 0; i2 < 32; ++i2) f.at(i1, i2) = a * std::cos(g.point(0, i1));
    const Spectrum s = transform(rhs_darcy3d(f, nu, DepthMode::infinite));
    const std::complex<double> expect_lin = -(1.0 + nu) * (a / 2.0);
    CHECK(std::abs(s.at(1, 0) - expect_lin) < 1e-13);
    double stray = 0.0;
    for (int k1 = -15; k1 <= 16; ++k1)
        for (int k2 = -15; k2 <= 16; ++k2) {
            if ((std::abs(k1) == 1 || std::abs(k1) == 2) && k2 == 0) continue;
            stray = std::max(stray, std::abs(s.at(k1, k2)));
        }
    CHECK(stray < 1e-14);
    // At infinite depth the two quadratic pieces cancel exactly on a single
    // mode; the finite-depth variant leaves tanh(1) tanh(2) - 1 at (2, 0).
    CHECK(std::abs(s.at(2, 0)) < 1e-14);
    const Spectrum sf = transform(rhs_darcy3d(f, nu, DepthMode::finite));
    CHECK(std::abs(sf.at(2, 0).real() -
                   (1.0 + nu) * 0.5 * a * a * (std::tanh(1.0) * std::tanh(2.0) - 1.0)) <
          1e-13);
}

TEST_CASE("darcy3d matches the 2D convolution oracle") {
    const auto g = PeriodicGrid::torus(16, 16);
    std::mt19937 rng(61);
    for (bool finite : {true, false}) {
        const Field f = oracle::random_band_limited(g, 3, rng, 0.5);
        const Spectrum s = transform(f);
        oracle::Modes2 fm;
        for (int k1 = -4; k1 <= 4; ++k1)
            for (int k2 = -4; k2 <= 4; ++k2) {
                const auto c = s.at(k1, k2);
                if (std::abs(c) > 1e-14) fm[{k1, k2}] = c;
            }
        const Field expect =
            oracle::to_field(oracle::darcy3d_rhs(fm, 0.1, finite, 16, 16), g);
        const Field got =
            rhs_darcy3d(f, 0.1, finite ? DepthMode::finite : DepthMode::infinite);
        CHECK(sup_diff(got, expect) < 1e-11);
    }
}

TEST_CASE("darcy3d on a non-square torus matches the oracle") {
    const auto g = PeriodicGrid::torus(16, 24);
    std::mt19937 rng(67);
    const Field f = oracle::random_band_limited(g, 3, rng, 0.5);
    const Spectrum s = transform(f);
    oracle::Modes2 fm;
    for (int k1 = -4; k1 <= 4; ++k1)
        for (int k2 = -4; k2 <= 4; ++k2) {
            const auto c = s.at(k1, k2);
            if (std::abs(c) > 1e-14) fm[{k1, k2}] = c;
        }
    const Field expect = oracle::to_field(oracle::darcy3d_rhs(fm, 0.2, true, 16, 24), g);
    CHECK(max_abs(rhs_darcy3d(f, 0.2, DepthMode::finite) - expect) < 1e-11);
}

TEST_CASE("darcy3d rejects 1D grids") {
    CHECK_THROWS_AS(rhs_darcy3d(Field(PeriodicGrid::line(16)), 0.1, DepthMode::finite),
                    InvalidInputError);
}

TEST_CASE("finite and infinite depth agree on high-wavenumber data") {
    const auto g = PeriodicGrid::torus(32, 32);
    Field f(g);
    for (int i1 = 0; i1 < 32; ++i1)
        for (int i2 = 0; i2 < 32; ++i2)
            f.at(i1, i2) = 0.4 * std::cos(8.0 * g.point(0, i1)) +
                           0.2 * std::cos(8.0 * g.point(1, i2));
    const Field a = rhs_darcy3d(f, 0.1, DepthMode::finite);
    const Field b = rhs_darcy3d(f, 0.1, DepthMode::infinite);
    CHECK(sup_diff(a, b) < 1e-6 * max_abs(a));
}

}  // TEST_SUITE
