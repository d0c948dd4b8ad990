#pragma once

#include "mqg/field.hpp"

namespace mqg {

/// DFT with true-Fourier-coefficient normalization:
/// c_xi = (1/n^2) sum_x f(x) e^{-i xi.x}.
SpectralField forward_transform(const ScalarField& f);

/// Inverse DFT, f(x) = sum_xi c_xi e^{+i xi.x}. The input must be Hermitian
/// symmetric; the imaginary residue is verified to be below 1e-12 of the
/// field magnitude and then discarded. Throws on asymmetric input.
ScalarField inverse_transform(const SpectralField& f);

} // namespace mqg
