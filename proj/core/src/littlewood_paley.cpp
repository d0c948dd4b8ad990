#include "mqg/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

namespace mqg {

namespace {

void check_q(const PartitionSpec& p, int q, int upper_slack) {
    if (q < p.q_min || q > p.q_max + upper_slack)
        throw Error("dyadic index q = " + std::to_string(q) + " outside partition range [" +
                    std::to_string(p.q_min) + ", " + std::to_string(p.q_max + upper_slack) + "]");
}

SpectralField apply_radial(const SpectralField& f, double (*weight)(double, double, double),
                           double a, double b) {
    const std::size_t n = f.grid.n;
    SpectralField out(f.grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = f.grid.freq(i2);
            const Complex c = f.at_index(i1, i2);
            if (c == Complex{}) continue;
            const double r = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
            const double w = weight(r, a, b);
            if (w != 0.0) out.at_index(i1, i2) = w * c;
        }
    }
    return out;
}

double low_weight(double r, double inv_scale, double) {
    return PartitionSpec::profile(r * inv_scale);
}
double block_weight(double r, double inv_next, double inv_cur) {
    return PartitionSpec::profile(r * inv_next) - PartitionSpec::profile(r * inv_cur);
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

} // namespace

PartitionSpec build_partition(const GridSpec& grid) {
    PartitionSpec p;
    p.q_min = -1;  // 2^{-1} <= 1 = smallest nonzero |xi|; the low part is just the mean
    int q = 0;
    while (std::ldexp(1.0, q) < grid.max_radius()) ++q;
    p.q_max = q;
    return p;
}

SpectralField s_q(const SpectralField& f, const PartitionSpec& p, int q) {
    check_q(p, q, 1);
    return apply_radial(f, low_weight, std::ldexp(1.0, -q), 0.0);
}

SpectralField delta_q(const SpectralField& f, const PartitionSpec& p, int q) {
    check_q(p, q, 0);
    return apply_radial(f, block_weight, std::ldexp(1.0, -(q + 1)), std::ldexp(1.0, -q));
}

LPDecomposition decompose(const SpectralField& f, const PartitionSpec& p) {
    LPDecomposition d;
    d.low = s_q(f, p, p.q_min);
    for (int q = p.q_min; q <= p.q_max; ++q) d.blocks.emplace(q, delta_q(f, p, q));
    return d;
}

std::vector<double> block_l2_norms(const SpectralField& f, const PartitionSpec& p) {
    std::vector<double> norms;
    norms.reserve(p.q_max - p.q_min + 1);
    for (int q = p.q_min; q <= p.q_max; ++q) norms.push_back(l2_norm(delta_q(f, p, q)));
    return norms;
}

double sobolev_norm(const SpectralField& f, double sigma, SobolevKind kind, NormMethod method,
                    const PartitionSpec& p) {
    if (method == NormMethod::Direct)
        return kind == SobolevKind::Homogeneous ? hdot_norm(f, sigma) : h_norm(f, sigma);

    if (kind == SobolevKind::Homogeneous) {
        double acc = 0.0;
        for (int q = p.q_min; q <= p.q_max; ++q) {
            const double b = l2_norm(delta_q(f, p, q));
            acc += std::pow(2.0, 2.0 * sigma * q) * b * b;
        }
        return std::sqrt(acc);
    }
    // ||S_0 f||_2 + (sum_{q >= 0} 2^{2 sigma q} ||Delta_q f||_2^2)^{1/2}
    double acc = 0.0;
    for (int q = 0; q <= p.q_max; ++q) {
        const double b = l2_norm(delta_q(f, p, q));
        acc += std::pow(2.0, 2.0 * sigma * q) * b * b;
    }
    return l2_norm(s_q(f, p, 0)) + std::sqrt(acc);
}

double chemin_lerner_norm(std::span<const double> times, std::span<const SpectralField> fields,
                          double r, double s, const PartitionSpec& p) {
    if (times.size() != fields.size()) throw Error("chemin_lerner_norm: times/fields mismatch");
    const bool time_sup = (r == kInf);
    if (fields.empty() || (!time_sup && fields.size() < 2))
        throw Error("chemin_lerner_norm: need at least 2 snapshots for finite r");
    if (!time_sup && !(r >= 1.0)) throw Error("chemin_lerner_norm: r must be >= 1 or inf");
    if (times.size() >= 3) {
        const double dt0 = times[1] - times[0];
        for (std::size_t i = 2; i < times.size(); ++i)
            if (std::abs((times[i] - times[i - 1]) - dt0) > 1e-9 * std::max(dt0, 1e-300))
                throw Error("chemin_lerner_norm: snapshots must be uniformly spaced");
    }

    double acc = 0.0;
    std::vector<double> y(fields.size());
    for (int q = p.q_min; q <= p.q_max; ++q) {
        for (std::size_t i = 0; i < fields.size(); ++i) y[i] = l2_norm(delta_q(fields[i], p, q));
        double time_norm;
        if (time_sup) {
            time_norm = *std::max_element(y.begin(), y.end());
        } else {
            std::vector<double> yr(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) yr[i] = std::pow(y[i], r);
            time_norm = std::pow(trapezoid(times, yr), 1.0 / r);
        }
        acc += std::pow(2.0, 2.0 * s * q) * time_norm * time_norm;
    }
    return std::sqrt(acc);
}

double k_functional(const SpectralField& theta0, double alpha, double nu, double r, double s,
                    double T, const PartitionSpec& p) {
    if (!(nu > 0.0)) throw Error("k_functional: nu must be positive");
    if (!(T >= 0.0)) throw Error("k_functional: T must be >= 0");
    if (!(r >= 2.0)) throw Error("k_functional: r must be >= 2 (or inf)");

    double acc = 0.0;
    for (int q = p.q_min; q <= p.q_max; ++q) {
        const double b = l2_norm(delta_q(theta0, p, q));
        if (b == 0.0) continue;
        double w = 1.0;
        if (r != kInf) {
            const double rate = nu * r * std::pow(2.0, alpha * q);
            w = std::pow(-std::expm1(-rate * T) / (nu * r), 1.0 / r);
        }
        const double term = w * std::pow(2.0, s * q) * b;
        acc += term * term;
    }
    return std::sqrt(acc);
}

KEstimate k_sweep(const SpectralField& theta0, double alpha, double nu, double r, double s,
                  std::span<const double> T_grid, const PartitionSpec& p) {
    KEstimate est;
    est.nu = nu;
    est.r = r;
    est.s = s;
    est.T_grid.assign(T_grid.begin(), T_grid.end());
    est.K_values.reserve(T_grid.size());
    for (double T : T_grid) est.K_values.push_back(k_functional(theta0, alpha, nu, r, s, T, p));
    return est;
}

double existence_time_estimate(const SpectralField& theta0, double alpha, double nu,
                               double epsilon, const PartitionSpec& p) {
    if (!(epsilon > 0.0)) throw Error("existence_time_estimate: epsilon must be positive");
    if (!(nu > 0.0)) throw Error("existence_time_estimate: nu must be positive");

    // T -> inf limit: weights saturate at (2 nu)^{-1/2}
    double limit_acc = 0.0;
    for (int q = p.q_min; q <= p.q_max; ++q) {
        const double b = l2_norm(delta_q(theta0, p, q));
        const double term = std::sqrt(1.0 / (2.0 * nu)) * std::pow(2.0, q) * b;
        limit_acc += term * term;
    }
    if (std::sqrt(limit_acc) <= epsilon) return kInf;

    const auto K = [&](double T) { return k_functional(theta0, alpha, nu, 2.0, 1.0, T, p); };

    double lo = 1.0, hi = 1.0;
    if (K(1.0) <= epsilon) {
        while (K(hi) <= epsilon) {
            hi *= 2.0;
            if (hi > 1e300) return kInf;
        }
        lo = hi / 2.0;
    } else {
        while (K(lo) > epsilon) {
            lo /= 2.0;
            if (lo < 1e-300) return 0.0;
        }
        hi = lo * 2.0;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (K(mid) <= epsilon ? lo : hi) = mid;
    }
    return lo;
}

} // namespace mqg
