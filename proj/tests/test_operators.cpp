#include "doctest.h"

#include "mqg/operators.hpp"
#include "mqg/random_fields.hpp"
#include "mqg/transform.hpp"
#include "test_support.hpp"

using namespace mqg;
using namespace mqg::test;

namespace {

SpectralField spectrum_of(const GridSpec& g, double (*fn)(double, double)) {
    return forward_transform(sample(g, fn));
}

} // namespace

TEST_CASE("fractional laplacian on a single mode multiplies by |k|^gamma") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double x1, double) { return std::sin(2.0 * x1); });
    const ScalarField out = inverse_transform(fractional_laplacian(F, 0.5));
    const ScalarField expect = sample(g, [](double x1, double) {
        return std::sqrt(2.0) * std::sin(2.0 * x1);
    });
    CHECK(max_sample_diff(out, expect) < 1e-12);
}

TEST_CASE("fractional laplacian: gamma = 0 is the identity on mean-zero fields") {
    EnsembleSpec spec;
    spec.n = 16;
    spec.seed = 21;
    const SpectralField f = random_field(spec);
    CHECK(max_coeff_diff(fractional_laplacian(f, 0.0), f) == 0.0);
}

TEST_CASE("fractional laplacian semigroup property") {
    EnsembleSpec spec;
    spec.n = 16;
    spec.seed = 22;
    const SpectralField f = random_field(spec);
    const double alpha = 0.6;
    const SpectralField twice =
        fractional_laplacian(fractional_laplacian(f, alpha / 2.0), alpha / 2.0);
    const SpectralField once = fractional_laplacian(f, alpha);
    CHECK(max_coeff_diff(twice, once) < 1e-12 * max_abs(once));

    // and with a negative leg back to the start
    const SpectralField back = fractional_laplacian(fractional_laplacian(f, 0.7), -0.7);
    CHECK(max_coeff_diff(back, f) < 1e-12 * max_abs(f));
}

TEST_CASE("fractional laplacian: zero-mode handling") {
    const GridSpec g(8);
    SpectralField F(g);
    F.at(0, 0) = 2.0;
    CHECK(fractional_laplacian(F, 0.5).at(0, 0) == Complex{});
    CHECK(fractional_laplacian(F, 0.0).at(0, 0) == Complex(2.0, 0.0));
    CHECK_THROWS_AS(fractional_laplacian(F, -0.5), Error);
}

TEST_CASE("velocity of sin(x1) is (0, cos(x1)) for every alpha") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double x1, double) { return std::sin(x1); });
    for (double alpha : {0.3, 0.5, 1.0}) {
        const VectorField u = riesz_perp_velocity(F, alpha, Variant::MQG);
        const ScalarField expect = sample(g, [](double x1, double) { return std::cos(x1); });
        CHECK(max_abs(u.u1) < 1e-13);
        CHECK(max_sample_diff(u.u2, expect) < 1e-12);
    }
}

TEST_CASE("velocity of cos(2 x2) at alpha = 0.5 is (2^{-1/2} sin(2 x2), 0)") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double, double x2) { return std::cos(2.0 * x2); });
    const VectorField u = riesz_perp_velocity(F, 0.5, Variant::MQG);
    const ScalarField expect = sample(g, [](double, double x2) {
        return std::sin(2.0 * x2) / std::sqrt(2.0);
    });
    CHECK(max_sample_diff(u.u1, expect) < 1e-12);
    CHECK(max_abs(u.u2) < 1e-13);
}

TEST_CASE("velocity of a constant is zero") {
    const GridSpec g(16);
    SpectralField F(g);
    F.at(0, 0) = 4.2;
    const VectorField u = riesz_perp_velocity(F, 0.5, Variant::MQG);
    CHECK(max_abs(u.u1) == 0.0);
    CHECK(max_abs(u.u2) == 0.0);
}

TEST_CASE("QG variant divides by |xi| once") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double, double x2) { return std::cos(2.0 * x2); });
    const VectorField u = riesz_perp_velocity(F, 0.5, Variant::QG);
    const ScalarField expect = sample(g, [](double, double x2) { return std::sin(2.0 * x2); });
    CHECK(max_sample_diff(u.u1, expect) < 1e-12);
}

TEST_CASE("spectral divergence of the velocity vanishes exactly at every mode") {
    EnsembleSpec spec;
    spec.n = 64;
    spec.decay = 1.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        spec.seed = seed;
        const SpectralField f = random_field(spec);
        const SpectralPair u = riesz_perp_velocity_spectral(f, 0.5, Variant::MQG);
        for (std::size_t i1 = 0; i1 < spec.n; ++i1) {
            const double k1 = f.grid.freq(i1);
            for (std::size_t i2 = 0; i2 < spec.n; ++i2) {
                const double k2 = f.grid.freq(i2);
                const Complex div = k1 * u.u1.at_index(i1, i2) + k2 * u.u2.at_index(i1, i2);
                CHECK(div == Complex{});
            }
        }
    }
}

TEST_CASE("dealias keeps exactly the |xi|_inf <= 5 modes at n = 16") {
    EnsembleSpec spec;
    spec.n = 16;
    spec.seed = 33;
    spec.decay = 0.0;
    const SpectralField f = random_field(spec);
    const SpectralField d = dealias(f);
    for (std::size_t i1 = 0; i1 < spec.n; ++i1) {
        const int k1 = std::abs(f.grid.freq(i1));
        for (std::size_t i2 = 0; i2 < spec.n; ++i2) {
            const int k2 = std::abs(f.grid.freq(i2));
            if (std::max(k1, k2) <= 5) {
                CHECK(d.at_index(i1, i2) == f.at_index(i1, i2));
            } else {
                CHECK(d.at_index(i1, i2) == Complex{});
            }
        }
    }
}

TEST_CASE("dealias: band-limited fields pass through, Nyquist mode dies") {
    const GridSpec g(16);
    SpectralField F(g);
    F.at(3, -4) = Complex(1.0, 2.0);
    F.at(-3, 4) = Complex(1.0, -2.0);
    CHECK(max_coeff_diff(dealias(F), F) == 0.0);
    SpectralField N(g);
    N.at(8, 0) = 1.0;
    CHECK(max_abs(dealias(N)) == 0.0);
}

TEST_CASE("spectral cutoff") {
    const GridSpec g(16);
    const SpectralField F = spectrum_of(g, [](double x1, double) {
        return std::sin(x1) + std::sin(2.0 * x1);
    });
    SUBCASE("radius covering the lattice is the identity") {
        CHECK(max_coeff_diff(spectral_cutoff(F, g.max_radius() + 1.0), F) == 0.0);
    }
    SUBCASE("radius 0 keeps only the mean") {
        const SpectralField out = spectral_cutoff(F, 0.0);
        CHECK(max_abs(out) < 1e-15);
    }
    SUBCASE("radius 1.5 keeps |xi| = 1 and cuts |xi| = 2") {
        const ScalarField out = inverse_transform(spectral_cutoff(F, 1.5));
        const ScalarField expect = sample(g, [](double x1, double) { return std::sin(x1); });
        CHECK(max_sample_diff(out, expect) < 1e-13);
    }
    SUBCASE("idempotent") {
        const SpectralField once = spectral_cutoff(F, 1.5);
        CHECK(max_coeff_diff(spectral_cutoff(once, 1.5), once) == 0.0);
    }
}

TEST_CASE("nonlinear term of a pure shear mode vanishes identically") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double x1, double) { return std::sin(x1); });
    const SpectralField nl = nonlinear_term(F, 0.5, Variant::MQG, true);
    CHECK(max_abs(nl) < 1e-15);
    CHECK(max_abs(nonlinear_term_oracle(F, 0.5, Variant::MQG)) < 1e-15);
}

TEST_CASE("two-mode hand convolution: (2^{-1/2} - 2) cos(x1) sin(2 x2)") {
    const GridSpec g(32);
    const SpectralField F = spectrum_of(g, [](double x1, double x2) {
        return std::sin(x1) + std::cos(2.0 * x2);
    });
    const ScalarField expect = sample(g, [](double x1, double x2) {
        return (1.0 / std::sqrt(2.0) - 2.0) * std::cos(x1) * std::sin(2.0 * x2);
    });
    const ScalarField fast = inverse_transform(nonlinear_term(F, 0.5, Variant::MQG, true));
    CHECK(max_sample_diff(fast, expect) < 1e-12);
    const ScalarField slow = inverse_transform(nonlinear_term_oracle(F, 0.5, Variant::MQG));
    CHECK(max_sample_diff(slow, expect) < 1e-12);
}

TEST_CASE("pseudo-spectral term matches the convolution oracle on band-limited data") {
    EnsembleSpec spec;
    spec.n = 16;
    spec.band_limit = 5;
    spec.decay = 1.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = 100 + seed;
        const SpectralField theta = random_field(spec);
        const SpectralField fast = nonlinear_term(theta, 0.5, Variant::MQG, true);
        const SpectralField slow = dealias(nonlinear_term_oracle(theta, 0.5, Variant::MQG));
        CHECK(max_coeff_diff(fast, slow) < 1e-12);
    }
}

TEST_CASE("oracle refuses large grids") {
    const GridSpec g(64);
    SpectralField F(g);
    CHECK_THROWS_AS(nonlinear_term_oracle(F, 0.5, Variant::MQG), Error);
}

TEST_CASE("advection is skew-symmetric on band-limited fields") {
    // <u.grad(theta), theta> = 0 discretely once products are alias-free
    EnsembleSpec spec;
    spec.n = 32;
    spec.band_limit = 10;
    spec.decay = 1.0;
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        spec.seed = seed;
        const SpectralField theta = random_field(spec);
        const SpectralField nl = nonlinear_term(theta, 0.5, Variant::MQG, true);
        const ScalarField a = inverse_transform(nl);
        const ScalarField b = inverse_transform(theta);
        double inner = 0.0;
        for (std::size_t i = 0; i < a.samples.size(); ++i) inner += a.samples[i] * b.samples[i];
        inner *= a.grid.dx() * a.grid.dx();
        const double grad_l2 = hdot_norm(theta, 1.0);
        CHECK(std::abs(inner) <= 1e-10 * l2_norm(theta) * grad_l2);
    }
}

TEST_CASE("nonlinear term zero mode is exactly zero") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.seed = 55;
    const SpectralField theta = random_field(spec);
    CHECK(nonlinear_term(theta, 0.5, Variant::MQG, true).at(0, 0) == Complex{});
    CHECK(nonlinear_term(theta, 0.5, Variant::MQG, false).at(0, 0) == Complex{});
}
