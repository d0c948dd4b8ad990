#pragma once

#include <cstdint>

#include "mqg/field.hpp"

namespace mqg {

/// Seeded random spectrum: c_xi = |xi|^{-decay} * (complex gaussian),
/// Hermitian-symmetrized and mean-zeroed. band_limit > 0 restricts the
/// support to |xi|_inf <= band_limit. The gaussian draws come from a
/// hand-rolled Box-Muller on mt19937_64 so ensembles reproduce bit-for-bit
/// across standard libraries.
struct EnsembleSpec {
    std::uint64_t seed = 1;
    std::size_t n = 64;
    double domain_length = kTwoPi;
    double decay = 2.0;
    int band_limit = 0;
};

SpectralField random_field(const EnsembleSpec& spec);

/// Rescale in place so that the inhomogeneous H^sigma norm equals target.
void normalize_h(SpectralField& f, double sigma, double target);

/// Rescale in place so that the homogeneous Hdot^sigma norm equals target.
void normalize_hdot(SpectralField& f, double sigma, double target);

} // namespace mqg
