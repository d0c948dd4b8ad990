#include "doctest.h"

#include "mqg/random_fields.hpp"
#include "mqg/transform.hpp"
#include "test_support.hpp"

using namespace mqg;
using namespace mqg::test;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(6), Error);    // not a power of two
    CHECK_THROWS_AS(GridSpec(4), Error);    // too small
    CHECK_THROWS_AS(GridSpec(16, 0.0), Error);
    const GridSpec g(16);
    CHECK(g.freq(0) == 0);
    CHECK(g.freq(8) == 8);
    CHECK(g.freq(9) == -7);
    CHECK(g.index_of(-7) == 9);
    CHECK(g.max_radius() == doctest::Approx(8.0 * std::sqrt(2.0)));
}

TEST_CASE("constant field transforms to pure mean") {
    const GridSpec g(16);
    const ScalarField one = sample(g, [](double, double) { return 1.0; });
    const SpectralField F = forward_transform(one);
    CHECK(std::abs(F.at(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    double off = 0.0;
    for (std::size_t i = 1; i < F.coefficients.size(); ++i)
        off = std::max(off, std::abs(F.coefficients[i]));
    CHECK(off < 1e-14);
}

TEST_CASE("sin(x1) lands on the (1,0) pair with coefficient 1/(2i)") {
    const GridSpec g(16);
    const SpectralField F = forward_transform(sample(g, [](double x1, double) {
        return std::sin(x1);
    }));
    CHECK(std::abs(F.at(1, 0) - Complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(F.at(-1, 0) - Complex(0.0, 0.5)) < 1e-14);
    CHECK(std::abs(F.at(2, 0)) < 1e-14);
}

TEST_CASE("fft matches the direct DFT sum at n = 8") {
    EnsembleSpec spec;
    spec.n = 8;
    spec.seed = 11;
    spec.decay = 0.5;
    const SpectralField f = random_field(spec);
    const ScalarField phys = inverse_transform(f);
    CHECK(max_coeff_diff(forward_transform(phys), dft_oracle(phys)) < 1e-13);
}

TEST_CASE("round trip is the identity to 1e-12 relative") {
    for (std::size_t n : {8u, 32u, 64u}) {
        EnsembleSpec spec;
        spec.n = n;
        spec.seed = 3 + n;
        spec.decay = 0.0;
        const SpectralField f = random_field(spec);
        const SpectralField back = forward_transform(inverse_transform(f));
        CHECK(max_coeff_diff(f, back) < 1e-12 * max_abs(f));
    }
}

TEST_CASE("inverse of mean-only field is the constant") {
    const GridSpec g(8);
    SpectralField F(g);
    F.at(0, 0) = 3.0;
    const ScalarField f = inverse_transform(F);
    for (double v : f.samples) CHECK(v == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("cos pair reconstructs cos(x1)") {
    const GridSpec g(16);
    SpectralField F(g);
    F.at(1, 0) = 0.5;
    F.at(-1, 0) = 0.5;
    const ScalarField f = inverse_transform(F);
    const ScalarField expect = sample(g, [](double x1, double) { return std::cos(x1); });
    CHECK(max_sample_diff(f, expect) < 1e-14);
}

TEST_CASE("asymmetric input is rejected") {
    const GridSpec g(16);
    SpectralField F(g);
    F.at(1, 0) = 1.0;  // no conjugate partner
    CHECK_THROWS_AS(inverse_transform(F), Error);
}

TEST_CASE("Parseval: grid quadrature equals coefficient sum") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.seed = 5;
    spec.decay = 1.0;
    const SpectralField f = random_field(spec);
    const double spectral = l2_norm(f);
    const double physical = l2_norm(inverse_transform(f));
    CHECK(physical == doctest::Approx(spectral).epsilon(1e-12));
}

TEST_CASE("hermitian error detects broken symmetry") {
    EnsembleSpec spec;
    spec.n = 16;
    spec.seed = 9;
    SpectralField f = random_field(spec);
    CHECK(hermitian_error(f) < 1e-15);
    f.at(2, 3) += Complex(0.0, 0.25);
    CHECK(hermitian_error(f) > 0.2);
}

TEST_CASE("hdot norm: sin(x1) has Hdot^s norm pi*sqrt(2) for every s") {
    const GridSpec g(32);
    const SpectralField F = forward_transform(sample(g, [](double x1, double) {
        return std::sin(x1);
    }));
    const double expect = kPi * std::sqrt(2.0);
    for (double s : {0.0, 0.5, 1.0, 1.75}) CHECK(hdot_norm(F, s) == doctest::Approx(expect));
    // single |xi| = 2 shell picks up the factor 2^s
    const SpectralField F2 = forward_transform(sample(g, [](double x1, double) {
        return std::sin(2.0 * x1);
    }));
    CHECK(hdot_norm(F2, 1.0) == doctest::Approx(2.0 * expect));
    CHECK(l2_norm(F2) == doctest::Approx(hdot_norm(F2, 0.0)));
}

TEST_CASE("negative-order hdot norm requires mean-zero input") {
    const GridSpec g(8);
    SpectralField F(g);
    F.at(0, 0) = 1.0;
    CHECK_THROWS_AS(hdot_norm(F, -0.5), Error);
}
