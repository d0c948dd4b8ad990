#include "mqg/transform.hpp"

#include <fftw3.h>

#include <cfloat>
#include <map>
#include <mutex>

namespace mqg {

namespace {

struct PlanSet {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plans are created once per grid size under a lock (the FFTW planner is not
// reentrant) and then executed on per-call buffers via fftw_execute_dft,
// which is safe from concurrent workers. FFTW_ESTIMATE keeps the plan choice
// deterministic; FFTW_UNALIGNED lets plain vectors serve as buffers.
PlanSet& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, PlanSet> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Complex> in(n * n), out(n * n);
    auto* a = reinterpret_cast<fftw_complex*>(in.data());
    auto* b = reinterpret_cast<fftw_complex*>(out.data());
    const int ni = static_cast<int>(n);
    PlanSet p;
    p.forward = fftw_plan_dft_2d(ni, ni, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_2d(ni, ni, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.forward || !p.backward) throw Error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::vector<Complex>& in, std::vector<Complex>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

SpectralField forward_transform(const ScalarField& f) {
    const std::size_t n = f.grid.n;
    if (f.samples.size() != f.grid.size()) throw Error("forward_transform: sample count mismatch");
    auto& plans = plans_for(n);

    std::vector<Complex> in(n * n), out(n * n);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex(f.samples[i], 0.0);
    execute(plans.forward, in, out);

    SpectralField F(f.grid);
    const double scale = 1.0 / static_cast<double>(n * n);
    for (std::size_t i = 0; i < out.size(); ++i) F.coefficients[i] = out[i] * scale;
    return F;
}

ScalarField inverse_transform(const SpectralField& F) {
    const std::size_t n = F.grid.n;
    if (F.coefficients.size() != F.grid.size())
        throw Error("inverse_transform: coefficient count mismatch");
    auto& plans = plans_for(n);

    std::vector<Complex> in = F.coefficients, out(n * n);
    execute(plans.backward, in, out);

    double scale = 0.0, residue = 0.0;
    for (const auto& v : out) {
        scale = std::max(scale, std::abs(v));
        residue = std::max(residue, std::abs(v.imag()));
    }
    if (!(residue <= 1e-12 * std::max(scale, DBL_MIN)))
        throw Error("inverse_transform: input violates Hermitian symmetry "
                    "(imaginary residue " + std::to_string(residue) + ")");

    ScalarField f(F.grid);
    for (std::size_t i = 0; i < out.size(); ++i) f.samples[i] = out[i].real();
    return f;
}

// ---- norm helpers declared in field.hpp ----

double lp_norm(const ScalarField& f, double p) {
    if (p == kInf) return max_abs(f);
    if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
    double s = 0.0;
    for (double v : f.samples) s += std::pow(std::abs(v), p);
    const double dx = f.grid.dx();
    return std::pow(dx * dx * s, 1.0 / p);
}

double hdot_norm(const SpectralField& f, double s) {
    const std::size_t n = f.grid.n;
    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = f.grid.freq(i2);
            const long r2 = k1 * k1 + k2 * k2;
            const double e = std::norm(f.at_index(i1, i2));
            if (r2 == 0) {
                if (s == 0.0) {
                    acc += e;
                } else if (s < 0.0 && e > 0.0) {
                    throw Error("hdot_norm: s < 0 requires a mean-zero field");
                }
                continue;
            }
            acc += std::pow(static_cast<double>(r2), s) * e;
        }
    }
    return f.grid.domain_length * std::sqrt(acc);
}

double h_norm(const SpectralField& f, double s) {
    const std::size_t n = f.grid.n;
    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = f.grid.freq(i2);
            const double r2 = static_cast<double>(k1 * k1 + k2 * k2);
            acc += std::pow(1.0 + r2, s) * std::norm(f.at_index(i1, i2));
        }
    }
    return f.grid.domain_length * std::sqrt(acc);
}

double hermitian_error(const SpectralField& f) {
    const std::size_t n = f.grid.n;
    double worst = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const std::size_t m1 = (n - i1) % n;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const std::size_t m2 = (n - i2) % n;
            worst = std::max(worst,
                             std::abs(f.at_index(m1, m2) - std::conj(f.at_index(i1, i2))));
        }
    }
    return worst;
}

int max_active_frequency(const SpectralField& f) {
    const std::size_t n = f.grid.n;
    int m = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            if (f.at_index(i1, i2) == Complex{}) continue;
            const int k2 = f.grid.freq(i2);
            m = std::max({m, std::abs(k1), std::abs(k2)});
        }
    }
    return m;
}

} // namespace mqg
