#include "mqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mqg/transform.hpp"

namespace mqg {

std::vector<double> energy_identity_residual(const Trajectory& traj) {
    const auto& rec = traj.records;
    if (rec.size() < 3) throw Error("energy_identity_residual: need at least 3 snapshots");
    std::vector<double> out(rec.size(), 0.0);
    for (std::size_t k = 1; k + 1 < rec.size(); ++k) {
        const double dt = 0.5 * (rec[k + 1].t - rec[k - 1].t);
        const double e_prev = rec[k - 1].l2 * rec[k - 1].l2;
        const double e_next = rec[k + 1].l2 * rec[k + 1].l2;
        const double d = rec[k].hdot_half_alpha * rec[k].hdot_half_alpha;
        out[k] = std::abs((e_next - e_prev) / (2.0 * dt) + 2.0 * d) / std::max(d, 1e-300);
    }
    return out;
}

void attach_energy_residuals(Trajectory& traj) {
    const auto res = energy_identity_residual(traj);
    for (std::size_t k = 0; k < res.size(); ++k) traj.records[k].energy_residual = res[k];
}

MaxPrincipleReport verify_maximum_principle(const Trajectory& traj) {
    MaxPrincipleReport report;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
        const double prev = traj.records[k - 1].l2;
        const double cur = traj.records[k].l2;
        const double violation = prev > 0.0 ? (cur - prev) / prev : (cur > 0.0 ? kInf : 0.0);
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.worst_index = k;
        }
    }
    report.pass = report.worst_violation <= 1e-12;
    return report;
}

BlowupReport blowup_monitor(const Trajectory& traj) {
    BlowupReport report;
    report.integral.reserve(traj.records.size());
    for (const auto& r : traj.records) report.integral.push_back(r.blowup_integral);

    // increments over the last tenth of the run vs the tenth before it
    const std::size_t m = report.integral.size();
    if (m >= 3) {
        const std::size_t window = std::max<std::size_t>(1, (m - 1) / 10);
        if (m - 1 >= 2 * window) {
            double recent = report.integral[m - 1] - report.integral[m - 1 - window];
            double before =
                report.integral[m - 1 - window] - report.integral[m - 1 - 2 * window];
            if (before > 0.0 && recent / before >= 10.0) report.suspect = true;
        }
    }
    if (traj.blowup) {
        report.suspect = true;
        // fit log ||theta||_{crit} vs log(T* - t) over the last decade
        const double t_star = traj.blowup->time + traj.config.dt;
        std::vector<double> lx, ly;
        for (const auto& r : traj.records) {
            const double tau = t_star - r.t;
            if (tau <= 0.0 || r.hdot_crit <= 0.0) continue;
            lx.push_back(std::log(tau));
            ly.push_back(std::log(r.hdot_crit));
        }
        const double cutoff = lx.empty() ? 0.0 : lx.back() + std::log(10.0);
        std::vector<double> fx, fy;
        for (std::size_t i = 0; i < lx.size(); ++i)
            if (lx[i] <= cutoff) {
                fx.push_back(lx[i]);
                fy.push_back(ly[i]);
            }
        if (fx.size() >= 3) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < fx.size(); ++i) {
                sx += fx[i];
                sy += fy[i];
                sxx += fx[i] * fx[i];
                sxy += fx[i] * fy[i];
            }
            const double nfit = static_cast<double>(fx.size());
            const double denom = nfit * sxx - sx * sx;
            if (denom != 0.0) {
                report.fitted_exponent = (nfit * sxy - sx * sy) / denom;
                report.has_fit = true;
            }
        }
    }
    return report;
}

namespace {

/// Move coefficients xi -> lambda*xi; frequencies leaving the lattice must
/// carry no energy.
SpectralField rescale_spatial(const SpectralField& f, int lambda) {
    const std::size_t n = f.grid.n;
    const int nyq = f.grid.max_component();
    SpectralField out(f.grid);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = f.grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const Complex c = f.at_index(i1, i2);
            if (c == Complex{}) continue;
            const int k2 = f.grid.freq(i2);
            const int m1 = k1 * lambda, m2 = k2 * lambda;
            if (m1 < -nyq + 1 || m1 > nyq || m2 < -nyq + 1 || m2 > nyq)
                throw Error("rescale_spatial: frequency overflow");
            out.at(m1, m2) = c;
        }
    }
    return out;
}

} // namespace

ScalingReport scaling_check(const ScalarField& theta0, int lambda, const SolverConfig& cfg) {
    if (lambda < 2 || (lambda & (lambda - 1)) != 0)
        throw Error("scaling_check: lambda must be a power of two >= 2");
    const SpectralField theta0_hat = forward_transform(theta0);
    const int kmax = max_active_frequency(theta0_hat);
    if (3 * static_cast<long>(kmax) * lambda > static_cast<long>(theta0_hat.grid.n))
        throw Error("scaling_check: lambda * max frequency leaves the dealias band");

    const double lam_alpha = std::pow(static_cast<double>(lambda), cfg.alpha);
    SolverConfig cfg_b = cfg;
    cfg_b.dt = cfg.dt / lam_alpha;
    cfg_b.t_end = cfg.t_end / lam_alpha;

    const Trajectory run_a = integrate(theta0_hat, cfg);
    const Trajectory run_b = integrate(rescale_spatial(theta0_hat, lambda), cfg_b);
    if (run_a.blowup || run_b.blowup) throw Error("scaling_check: run blew up");

    ScalingReport report;
    report.field_scale = max_abs(inverse_transform(theta0_hat));
    const std::size_t m = std::min(run_a.snapshots.size(), run_b.snapshots.size());
    for (std::size_t i = 0; i < m; ++i) {
        const ScalarField b = inverse_transform(run_b.snapshots[i]);
        const ScalarField a = inverse_transform(rescale_spatial(run_a.snapshots[i], lambda));
        double d = 0.0;
        for (std::size_t j = 0; j < b.samples.size(); ++j)
            d = std::max(d, std::abs(b.samples[j] - a.samples[j]));
        report.check_times.push_back(run_b.times[i]);
        report.rel_diffs.push_back(d / std::max(report.field_scale, 1e-300));
    }
    report.sup_rel_diff =
        *std::max_element(report.rel_diffs.begin(), report.rel_diffs.end());
    return report;
}

SmoothingReport smoothing_report(const Trajectory& traj, const PartitionSpec& p) {
    if (traj.snapshots.size() < 2) throw Error("smoothing_report: need at least 2 snapshots");
    SmoothingReport report;
    report.q_half = p.q_min + (p.q_max - p.q_min) / 2;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& f = traj.snapshots[i];
        double tail = 0.0;
        for (int q = report.q_half; q <= p.q_max; ++q) {
            const double b = l2_norm(delta_q(f, p, q));
            tail += std::pow(2.0, 2.0 * q) * b * b;
        }
        report.times.push_back(traj.times[i]);
        report.tail_energy.push_back(tail);
        report.h2_norm.push_back(h_norm(f, 2.0));
    }
    const double tail0 = report.tail_energy.front();
    for (double t : report.tail_energy)
        report.tail_ratio.push_back(tail0 > 0.0 ? t / tail0 : 0.0);
    return report;
}

// ---- inequality probes ----

const char* probe_name(ProbeKind kind) {
    switch (kind) {
        case ProbeKind::BernsteinLower: return "bernstein_lower";
        case ProbeKind::BernsteinUpper: return "bernstein_upper";
        case ProbeKind::RieszLp: return "riesz_lp";
        case ProbeKind::Product: return "product";
        case ProbeKind::Commutator: return "commutator";
    }
    return "?";
}

namespace {

void summarize(ProbeReport& report) {
    std::vector<double> r;
    r.reserve(report.samples.size());
    for (const auto& s : report.samples) r.push_back(s.ratio);
    std::sort(r.begin(), r.end());
    report.min_ratio = r.front();
    report.max_ratio = r.back();
    report.median_ratio = r[r.size() / 2];
}

bool all_finite(const ProbeReport& report) {
    return std::all_of(report.samples.begin(), report.samples.end(),
                       [](const ProbeSample& s) { return std::isfinite(s.ratio); });
}

} // namespace

ProbeReport probe_inequality(ProbeKind kind, const EnsembleSpec& ensemble,
                             std::size_t ensemble_size, const ProbeParams& params) {
    if (ensemble_size < 10) throw Error("probe_inequality: ensemble_size must be >= 10");

    ProbeReport report;
    report.inequality = probe_name(kind);
    report.ensemble_size = ensemble_size;
    report.blockwise = kind == ProbeKind::BernsteinLower || kind == ProbeKind::BernsteinUpper ||
                       kind == ProbeKind::Commutator;

    const GridSpec grid(ensemble.n, ensemble.domain_length);
    const PartitionSpec part = build_partition(grid);
    if (report.blockwise && (params.q_lo < part.q_min || params.q_hi > part.q_max))
        throw Error("probe_inequality: q range outside the partition");

    switch (kind) {
        case ProbeKind::BernsteinLower: {
            if (!(params.gamma > 0.0)) throw Error("bernstein_lower: gamma must be positive");
            for (std::size_t i = 0; i < ensemble_size; ++i) {
                EnsembleSpec e = ensemble;
                e.seed = ensemble.seed + i;
                const SpectralField g = random_field(e);
                for (int q = params.q_lo; q <= params.q_hi; ++q) {
                    const SpectralField block = delta_q(g, part, q);
                    const double denom = std::pow(2.0, params.gamma * q) * l2_norm(block);
                    const double num = l2_norm(fractional_laplacian(block, params.gamma));
                    report.samples.push_back({e.seed, q, num / denom});
                }
            }
            break;
        }
        case ProbeKind::BernsteinUpper: {
            // ||Lambda^gamma D^(1,0) Delta_q f||_r <= C 2^{q(gamma+1) + 2q(1/p - 1/r)} ||Delta_q f||_p
            for (std::size_t i = 0; i < ensemble_size; ++i) {
                EnsembleSpec e = ensemble;
                e.seed = ensemble.seed + i;
                const SpectralField g = random_field(e);
                for (int q = params.q_lo; q <= params.q_hi; ++q) {
                    const SpectralField block = delta_q(g, part, q);
                    const SpectralField lhs_hat =
                        gradient(fractional_laplacian(block, params.gamma)).u1;
                    const double lhs = lp_norm(inverse_transform(lhs_hat), params.lp_r);
                    const double inv_r = params.lp_r == kInf ? 0.0 : 1.0 / params.lp_r;
                    const double expo =
                        q * (params.gamma + 1.0) + 2.0 * q * (1.0 / params.lp_p - inv_r);
                    const double denom = std::pow(2.0, expo) *
                                         lp_norm(inverse_transform(block), params.lp_p);
                    report.samples.push_back({e.seed, q, lhs / denom});
                }
            }
            break;
        }
        case ProbeKind::RieszLp: {
            if (!(params.gamma > 0.0 && params.gamma < 1.0))
                throw Error("riesz_lp: gamma must lie in (0, 1)");
            for (std::size_t i = 0; i < ensemble_size; ++i) {
                EnsembleSpec e = ensemble;
                e.seed = ensemble.seed + i;
                const SpectralField f = random_field(e);
                const VectorField u =
                    riesz_perp_velocity(f, params.gamma, Variant::MQG);
                ScalarField mag(u.u1.grid);
                for (std::size_t j = 0; j < mag.samples.size(); ++j)
                    mag.samples[j] = std::hypot(u.u1.samples[j], u.u2.samples[j]);
                const double lhs = lp_norm(mag, 2.0 / params.gamma);
                report.samples.push_back({e.seed, 0, lhs / l2_norm(f)});
            }
            break;
        }
        case ProbeKind::Product: {
            if (!(params.sigma1 < 1.0 && params.sigma2 < 1.0 &&
                  params.sigma1 + params.sigma2 > 0.0))
                throw Error("product: need sigma1, sigma2 < 1 and sigma1 + sigma2 > 0");
            const double sigma = params.sigma1 + params.sigma2 - 1.0;
            // keep the product alias-free: supports add, so limit each factor
            EnsembleSpec base = ensemble;
            if (base.band_limit == 0 ||
                base.band_limit > static_cast<int>(ensemble.n) / 4 - 1)
                base.band_limit = static_cast<int>(ensemble.n) / 4 - 1;
            for (std::size_t i = 0; i < ensemble_size; ++i) {
                EnsembleSpec ef = base, eg = base;
                ef.seed = ensemble.seed + 2 * i;
                eg.seed = ensemble.seed + 2 * i + 1;
                const SpectralField f = random_field(ef);
                const SpectralField g = random_field(eg);
                const ScalarField fp = inverse_transform(f);
                const ScalarField gp = inverse_transform(g);
                ScalarField prod(fp.grid);
                for (std::size_t j = 0; j < prod.samples.size(); ++j)
                    prod.samples[j] = fp.samples[j] * gp.samples[j];
                SpectralField prod_hat = forward_transform(prod);
                if (sigma < 0.0) prod_hat.at(0, 0) = Complex{};  // Hdot^{sigma<0} mod constants
                const double lhs = hdot_norm(prod_hat, sigma);
                const double denom =
                    hdot_norm(f, params.sigma1) * hdot_norm(g, params.sigma2);
                report.samples.push_back({ef.seed, 0, lhs / denom});
            }
            break;
        }
        case ProbeKind::Commutator: {
            // [Delta_q, u.grad]g = Delta_q(u.grad g) - u.grad(Delta_q g), u from f
            EnsembleSpec base = ensemble;
            if (base.band_limit == 0 ||
                base.band_limit > static_cast<int>(ensemble.n) / 3)
                base.band_limit = static_cast<int>(ensemble.n) / 3;
            for (std::size_t i = 0; i < ensemble_size; ++i) {
                EnsembleSpec ef = base, eg = base;
                ef.seed = ensemble.seed + 2 * i;
                eg.seed = ensemble.seed + 2 * i + 1;
                const SpectralField f = random_field(ef);
                const SpectralField g = random_field(eg);
                const VectorField u = riesz_perp_velocity(f, params.alpha, Variant::MQG);
                const SpectralField ug = advect(u, g, true);
                const double crit = 1.0 + params.alpha / 2.0;
                const double denom_norms = hdot_norm(f, crit) * hdot_norm(g, params.s) +
                                           hdot_norm(g, crit) * hdot_norm(f, params.s);
                for (int q = params.q_lo; q <= params.q_hi; ++q) {
                    SpectralField comm = delta_q(ug, part, q);
                    comm -= advect(u, delta_q(g, part, q), true);
                    const double weight =
                        std::pow(2.0, -q * (params.s - params.alpha / 2.0));
                    report.samples.push_back(
                        {ef.seed, q, l2_norm(comm) / (weight * denom_norms)});
                }
            }
            break;
        }
    }

    summarize(report);
    if (kind == ProbeKind::BernsteinLower) {
        const double lo = std::pow(2.0, -2.0 * params.gamma) * (1.0 - 1e-9);
        const double hi = std::pow(2.0, 2.0 * params.gamma) * (1.0 + 1e-9);
        report.bounded = all_finite(report) && report.min_ratio >= lo && report.max_ratio <= hi;
    } else {
        report.bounded = all_finite(report) && report.min_ratio > 0.0 &&
                         report.max_ratio / report.min_ratio <= 1e3;
    }
    return report;
}

} // namespace mqg
