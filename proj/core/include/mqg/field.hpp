#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "mqg/grid.hpp"

namespace mqg {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real samples on the periodic grid, row-major: samples[j1*n + j2] is the
/// value at x = (L*j1/n, L*j2/n).
struct ScalarField {
    GridSpec grid;
    std::vector<double> samples;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), samples(g.size(), 0.0) {}

    double& at(std::size_t j1, std::size_t j2) { return samples[j1 * grid.n + j2]; }
    double at(std::size_t j1, std::size_t j2) const { return samples[j1 * grid.n + j2]; }
};

/// Fourier coefficients c_xi on the integer lattice, stored in FFT order:
/// coefficients[i1*n + i2] belongs to xi = (freq(i1), freq(i2)). A field
/// representing a real function satisfies c_{-xi} = conj(c_xi), where -xi is
/// taken modulo n on each component.
struct SpectralField {
    GridSpec grid;
    std::vector<Complex> coefficients;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coefficients(g.size(), Complex{}) {}

    Complex& at_index(std::size_t i1, std::size_t i2) { return coefficients[i1 * grid.n + i2]; }
    Complex at_index(std::size_t i1, std::size_t i2) const { return coefficients[i1 * grid.n + i2]; }
    /// Access by frequency pair, each in (-n/2, n/2].
    Complex& at(int k1, int k2) { return coefficients[grid.index_of(k1) * grid.n + grid.index_of(k2)]; }
    Complex at(int k1, int k2) const { return coefficients[grid.index_of(k1) * grid.n + grid.index_of(k2)]; }
};

/// Two scalar fields sharing a grid; velocity in physical space.
struct VectorField {
    ScalarField u1, u2;
};

/// Velocity components in spectral form.
struct SpectralPair {
    SpectralField u1, u2;
};

// ---- elementwise helpers ----

inline SpectralField& operator+=(SpectralField& a, const SpectralField& b) {
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) a.coefficients[i] += b.coefficients[i];
    return a;
}
inline SpectralField& operator-=(SpectralField& a, const SpectralField& b) {
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) a.coefficients[i] -= b.coefficients[i];
    return a;
}
inline SpectralField& operator*=(SpectralField& a, double s) {
    for (auto& c : a.coefficients) c *= s;
    return a;
}
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }

inline bool is_finite(const SpectralField& f) {
    return std::all_of(f.coefficients.begin(), f.coefficients.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

inline double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coefficients) m = std::max(m, std::abs(c));
    return m;
}
inline double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

// ---- norms ----

/// Physical L2 norm by grid quadrature: (dx^2 * sum f^2)^(1/2).
inline double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.samples) s += v * v;
    return f.grid.dx() * std::sqrt(s);
}

/// L2 norm from coefficients (Parseval): L * (sum |c|^2)^(1/2).
inline double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.coefficients) s += std::norm(c);
    return f.grid.domain_length * std::sqrt(s);
}

/// Lp norm by grid quadrature; p = inf gives the max-norm.
double lp_norm(const ScalarField& f, double p);

/// Homogeneous Sobolev norm by direct lattice sum, L * (sum |xi|^{2s}|c|^2)^(1/2).
/// The zero mode contributes only at s = 0 (where the norm is plain L2);
/// s < 0 requires a mean-zero field.
double hdot_norm(const SpectralField& f, double s);

/// Inhomogeneous Sobolev norm, L * (sum (1+|xi|^2)^s |c|^2)^(1/2).
double h_norm(const SpectralField& f, double s);

/// Largest deviation from the real-field symmetry c_{-xi} = conj(c_xi).
double hermitian_error(const SpectralField& f);

/// Largest |xi|_inf with a nonzero coefficient (0 for the zero field).
int max_active_frequency(const SpectralField& f);

} // namespace mqg
