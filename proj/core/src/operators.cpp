#include "mqg/operators.hpp"

#include <cmath>

#include "mqg/transform.hpp"

namespace mqg {

namespace {

// Drop mantissa bits so that products with lattice integers |k| <= n/2 stay
// exact. The perturbation is ~2^-(44) relative for n = 1024, far below every
// tolerance in use; in return the spectral divergence of the velocity
// cancels bit-exactly.
double trim_mantissa(double x, int keep_bits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    int e = 0;
    const double m = std::frexp(x, &e);
    return std::ldexp(std::nearbyint(std::ldexp(m, keep_bits)), e - keep_bits);
}

int lattice_headroom_bits(std::size_t n) {
    int b = 0;
    for (std::size_t v = n / 2; v > 1; v >>= 1) ++b;
    return b;  // |k| <= n/2 = 2^b
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0, 1]");
}

} // namespace

SpectralField fractional_laplacian(const SpectralField& f, double gamma) {
    const std::size_t n = f.grid.n;
    SpectralField out(f.grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = f.grid.freq(i2);
            const long r2 = k1 * k1 + k2 * k2;
            const Complex c = f.at_index(i1, i2);
            if (r2 == 0) {
                if (gamma == 0.0) {
                    out.at_index(i1, i2) = c;
                } else if (gamma < 0.0 && c != Complex{}) {
                    throw Error("fractional_laplacian: gamma < 0 is undefined on the zero mode; "
                                "input must be mean-zero");
                }
                continue;
            }
            out.at_index(i1, i2) = std::pow(std::sqrt(static_cast<double>(r2)), gamma) * c;
        }
    }
    return out;
}

SpectralPair riesz_perp_velocity_spectral(const SpectralField& theta, double alpha,
                                          Variant variant) {
    check_alpha(alpha);
    const std::size_t n = theta.grid.n;
    const int nyquist = theta.grid.max_component();
    const int keep = 53 - lattice_headroom_bits(n);
    SpectralPair u{SpectralField(theta.grid), SpectralField(theta.grid)};

    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = theta.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const int k2 = theta.grid.freq(i2);
            if ((k1 == 0 && k2 == 0) || k1 == nyquist || k2 == nyquist) continue;
            const Complex c = theta.at_index(i1, i2);
            if (c == Complex{}) continue;
            const double r = std::sqrt(static_cast<double>(static_cast<long>(k1) * k1 +
                                                           static_cast<long>(k2) * k2));
            const double m = variant == Variant::MQG ? std::pow(r, alpha - 2.0) : 1.0 / r;
            // shared scalar W = i * m * c, trimmed for exact lattice products
            Complex w = Complex(0.0, 1.0) * (m * c);
            w = Complex(trim_mantissa(w.real(), keep), trim_mantissa(w.imag(), keep));
            u.u1.at_index(i1, i2) = -static_cast<double>(k2) * w;
            u.u2.at_index(i1, i2) = static_cast<double>(k1) * w;
        }
    }
    return u;
}

VectorField riesz_perp_velocity(const SpectralField& theta, double alpha, Variant variant) {
    SpectralPair u = riesz_perp_velocity_spectral(theta, alpha, variant);
    return VectorField{inverse_transform(u.u1), inverse_transform(u.u2)};
}

SpectralPair gradient(const SpectralField& f) {
    const std::size_t n = f.grid.n;
    const int nyquist = f.grid.max_component();
    SpectralPair g{SpectralField(f.grid), SpectralField(f.grid)};
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const int k2 = f.grid.freq(i2);
            const Complex ic = Complex(0.0, 1.0) * f.at_index(i1, i2);
            if (k1 != nyquist) g.u1.at_index(i1, i2) = static_cast<double>(k1) * ic;
            if (k2 != nyquist) g.u2.at_index(i1, i2) = static_cast<double>(k2) * ic;
        }
    }
    return g;
}

SpectralField dealias(const SpectralField& f) {
    const std::size_t n = f.grid.n;
    SpectralField out = f;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = std::abs(f.grid.freq(i1));
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = std::abs(f.grid.freq(i2));
            if (3 * std::max(k1, k2) > static_cast<long>(n)) out.at_index(i1, i2) = Complex{};
        }
    }
    return out;
}

SpectralField spectral_cutoff(const SpectralField& f, double radius) {
    if (!(radius >= 0.0)) throw Error("spectral_cutoff: radius must be >= 0");
    const std::size_t n = f.grid.n;
    const double r2max = radius * radius;
    SpectralField out = f;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = f.grid.freq(i2);
            if (static_cast<double>(k1 * k1 + k2 * k2) > r2max) out.at_index(i1, i2) = Complex{};
        }
    }
    return out;
}

SpectralField advect(const VectorField& u, const SpectralField& theta, bool dealias_on) {
    const SpectralPair grad = gradient(theta);
    const ScalarField g1 = inverse_transform(grad.u1);
    const ScalarField g2 = inverse_transform(grad.u2);

    ScalarField w(theta.grid);
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        w.samples[i] = u.u1.samples[i] * g1.samples[i] + u.u2.samples[i] * g2.samples[i];

    SpectralField out = forward_transform(w);
    if (dealias_on) out = dealias(out);
    out.at(0, 0) = Complex{};  // u.grad(theta) = div(u theta) has zero mean
    return out;
}

SpectralField nonlinear_term(const SpectralField& theta, double alpha, Variant variant,
                             bool dealias_on) {
    const VectorField u = riesz_perp_velocity(theta, alpha, variant);
    return advect(u, theta, dealias_on);
}

SpectralField nonlinear_term_oracle(const SpectralField& theta, double alpha, Variant variant) {
    check_alpha(alpha);
    const std::size_t n = theta.grid.n;
    if (n > 32) throw Error("nonlinear_term_oracle: grid too large (n <= 32)");
    const int nyquist = theta.grid.max_component();
    const int lo = -nyquist + 1;

    // velocity coefficients, same multiplier convention as the fast path
    SpectralPair u = riesz_perp_velocity_spectral(theta, alpha, variant);

    SpectralField out(theta.grid);
    for (int x1 = lo; x1 <= nyquist; ++x1) {
        for (int x2 = lo; x2 <= nyquist; ++x2) {
            Complex acc{};
            // sum over eta + zeta = xi with both factors on the lattice
            for (int e1 = lo; e1 <= nyquist; ++e1) {
                for (int e2 = lo; e2 <= nyquist; ++e2) {
                    const int z1 = x1 - e1;
                    const int z2 = x2 - e2;
                    if (z1 < lo || z1 > nyquist || z2 < lo || z2 > nyquist) continue;
                    const Complex th = theta.at(z1, z2);
                    if (th == Complex{}) continue;
                    const Complex igrad1 = Complex(0.0, z1 == nyquist ? 0.0 : z1) * th;
                    const Complex igrad2 = Complex(0.0, z2 == nyquist ? 0.0 : z2) * th;
                    acc += u.u1.at(e1, e2) * igrad1 + u.u2.at(e1, e2) * igrad2;
                }
            }
            out.at(x1, x2) = acc;
        }
    }
    out.at(0, 0) = Complex{};
    return out;
}

} // namespace mqg
