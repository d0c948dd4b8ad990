#include "mqg/random_fields.hpp"

#include <cmath>
#include <random>

namespace mqg {

namespace {

// Box-Muller on raw mt19937_64 draws; std::normal_distribution is
// implementation-defined, this is not.
struct Gaussian {
    explicit Gaussian(std::uint64_t seed) : rng(seed) {}

    double uniform() {
        // 53-bit uniform in (0, 1]
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    }
    double operator()() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u = uniform();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double phi = kTwoPi * v;
        spare = r * std::sin(phi);
        have_spare = true;
        return r * std::cos(phi);
    }

    std::mt19937_64 rng;
    double spare = 0.0;
    bool have_spare = false;
};

} // namespace

SpectralField random_field(const EnsembleSpec& spec) {
    GridSpec grid(spec.n, spec.domain_length);
    Gaussian g(spec.seed);
    const std::size_t n = grid.n;

    SpectralField raw(grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const int k2 = grid.freq(i2);
            // draw in deterministic order regardless of the band limit
            const double re = g();
            const double im = g();
            if (k1 == 0 && k2 == 0) continue;
            if (spec.band_limit > 0 &&
                std::max(std::abs(k1), std::abs(k2)) > spec.band_limit)
                continue;
            const double r = std::sqrt(static_cast<double>(static_cast<long>(k1) * k1 +
                                                           static_cast<long>(k2) * k2));
            raw.at_index(i1, i2) = std::pow(r, -spec.decay) * Complex(re, im);
        }
    }

    // Hermitian symmetrization: c <- (c + conj(c at -xi)) / 2
    SpectralField out(grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const std::size_t m1 = (n - i1) % n;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const std::size_t m2 = (n - i2) % n;
            out.at_index(i1, i2) =
                0.5 * (raw.at_index(i1, i2) + std::conj(raw.at_index(m1, m2)));
        }
    }
    out.at(0, 0) = Complex{};
    return out;
}

void normalize_h(SpectralField& f, double sigma, double target) {
    const double norm = h_norm(f, sigma);
    if (norm == 0.0) throw Error("normalize_h: zero field");
    f *= target / norm;
}

void normalize_hdot(SpectralField& f, double sigma, double target) {
    const double norm = hdot_norm(f, sigma);
    if (norm == 0.0) throw Error("normalize_hdot: zero field");
    f *= target / norm;
}

} // namespace mqg
