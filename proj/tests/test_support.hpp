#pragma once

#include <cmath>

#include "mqg/field.hpp"
#include "mqg/transform.hpp"

namespace mqg::test {

inline constexpr double kPi = 3.14159265358979323846264338328;

/// Sample a closed-form function of (x1, x2) on the grid.
template <class Fn>
ScalarField sample(const GridSpec& grid, Fn&& fn) {
    ScalarField f(grid);
    for (std::size_t j1 = 0; j1 < grid.n; ++j1) {
        const double x1 = kTwoPi * static_cast<double>(j1) / static_cast<double>(grid.n);
        for (std::size_t j2 = 0; j2 < grid.n; ++j2) {
            const double x2 = kTwoPi * static_cast<double>(j2) / static_cast<double>(grid.n);
            f.at(j1, j2) = fn(x1, x2);
        }
    }
    return f;
}

/// Direct O(n^4) discrete Fourier sum; the independent oracle for the FFT
/// path. Usable only at small n.
inline SpectralField dft_oracle(const ScalarField& f) {
    const std::size_t n = f.grid.n;
    SpectralField F(f.grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = F.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const int k2 = F.grid.freq(i2);
            Complex acc{};
            for (std::size_t j1 = 0; j1 < n; ++j1) {
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    const double phase =
                        -kTwoPi * (static_cast<double>(k1) * static_cast<double>(j1) +
                                   static_cast<double>(k2) * static_cast<double>(j2)) /
                        static_cast<double>(n);
                    acc += f.at(j1, j2) * Complex(std::cos(phase), std::sin(phase));
                }
            }
            F.at_index(i1, i2) = acc / static_cast<double>(n * n);
        }
    }
    return F;
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        d = std::max(d, std::abs(a.coefficients[i] - b.coefficients[i]));
    return d;
}

inline double max_sample_diff(const ScalarField& a, const ScalarField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        d = std::max(d, std::abs(a.samples[i] - b.samples[i]));
    return d;
}

} // namespace mqg::test
