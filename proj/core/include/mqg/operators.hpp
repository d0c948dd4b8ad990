#pragma once

#include "mqg/field.hpp"

namespace mqg {

/// Which velocity law closes the active scalar equation.
enum class Variant { MQG, QG };

/// Fractional Laplacian: multiply c_xi by |xi|^gamma. The zero mode is mapped
/// to 0 for gamma != 0 and kept for gamma = 0; gamma < 0 requires a mean-zero
/// input.
SpectralField fractional_laplacian(const SpectralField& f, double gamma);

/// Velocity components in spectral form:
///   MQG: u_hat = i(-xi2, xi1) |xi|^{alpha-2} c_xi,   QG: i(-xi2, xi1) |xi|^{-1} c_xi.
/// The zero mode and the Nyquist lines (|xi_j| = n/2, where odd multipliers
/// are sign-ambiguous) map to zero. The shared scalar per mode is rounded to
/// a mantissa short enough that products with lattice integers are exact, so
/// xi1*u1_hat + xi2*u2_hat cancels bit-exactly.
SpectralPair riesz_perp_velocity_spectral(const SpectralField& theta, double alpha, Variant variant);

/// Same velocity in physical space.
VectorField riesz_perp_velocity(const SpectralField& theta, double alpha, Variant variant);

/// Spectral gradient (i xi_j multipliers, Nyquist lines zeroed per component).
SpectralPair gradient(const SpectralField& f);

/// 2/3-rule dealiasing: zero every coefficient with max(|xi1|,|xi2|) > n/3.
SpectralField dealias(const SpectralField& f);

/// Sharp Fourier cutoff: keep |xi| <= radius, zero the rest. Idempotent.
SpectralField spectral_cutoff(const SpectralField& f, double radius);

/// Pseudo-spectral advection u . grad(theta) for given physical velocity:
/// gradient spectrally, multiply pointwise, transform back. The zero mode of
/// the result is forced to exactly zero.
SpectralField advect(const VectorField& u, const SpectralField& theta, bool dealias_on);

/// Nonlinear term u . grad(theta) with u derived from theta itself.
SpectralField nonlinear_term(const SpectralField& theta, double alpha, Variant variant,
                             bool dealias_on);

/// Reference evaluation of the nonlinear term by direct convolution over
/// frequency pairs -- no transforms, no aliasing. Quadratic cost per output
/// mode; refuses grids larger than n = 32.
SpectralField nonlinear_term_oracle(const SpectralField& theta, double alpha, Variant variant);

} // namespace mqg
