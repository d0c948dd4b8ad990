#pragma once

#include <cmath>
#include <cstddef>

#include "mqg/errors.hpp"

namespace mqg {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Periodic square grid: n samples per dimension on [0, L)^2 with the integer
/// frequency lattice xi in {-n/2+1, ..., n/2}^2 (FFT storage order).
struct GridSpec {
    std::size_t n = 0;
    double domain_length = kTwoPi;

    GridSpec() = default;
    GridSpec(std::size_t n_, double length = kTwoPi) : n(n_), domain_length(length) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw Error("GridSpec: n must be a power of two >= 8");
        if (!(domain_length > 0.0))
            throw Error("GridSpec: domain_length must be positive");
    }

    std::size_t size() const { return n * n; }
    double dx() const { return domain_length / static_cast<double>(n); }

    /// Frequency of storage index i: 0,1,...,n/2,-n/2+1,...,-1.
    int freq(std::size_t i) const {
        return i <= n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
    }
    /// Storage index of an in-range frequency.
    std::size_t index_of(int k) const {
        return static_cast<std::size_t>(k >= 0 ? k : k + static_cast<int>(n));
    }
    int max_component() const { return static_cast<int>(n / 2); }
    /// Largest |xi| on the lattice, attained at (n/2, n/2).
    double max_radius() const {
        const double h = static_cast<double>(n) / 2.0;
        return std::sqrt(2.0) * h;
    }

    bool operator==(const GridSpec&) const = default;
};

} // namespace mqg
