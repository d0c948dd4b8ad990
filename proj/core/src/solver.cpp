#include "mqg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mqg/transform.hpp"

namespace mqg {

namespace {

void check_config(const SolverConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw Error("SolverConfig: alpha must be in (0, 1]");
    if (!(cfg.dt > 0.0 && cfg.dt < cfg.t_end)) throw Error("SolverConfig: need 0 < dt < t_end");
    if (cfg.snapshot_every == 0) throw Error("SolverConfig: snapshot_every must be >= 1");
}

void check_mean_zero(const SpectralField& theta) {
    const double tol = 1e-12 * std::max(max_abs(theta), 1e-300);
    if (std::abs(theta.at(0, 0)) > tol)
        throw Error("solver: theta must be mean-zero");
}

// e^{-|xi|^alpha h} per mode
std::vector<double> decay_factors(const GridSpec& grid, double alpha, double h) {
    const std::size_t n = grid.n;
    std::vector<double> e(n * n);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long k1 = grid.freq(i1);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const long k2 = grid.freq(i2);
            const long r2 = k1 * k1 + k2 * k2;
            e[i1 * n + i2] =
                r2 == 0 ? 1.0
                        : std::exp(-std::pow(std::sqrt(static_cast<double>(r2)), alpha) * h);
        }
    }
    return e;
}

using NonlinearFn = std::function<SpectralField(const SpectralField&, double)>;

// One integrating-factor RK4 step from time t: the dissipative semigroup is
// applied exactly per stage, the advective part g(theta, t) explicitly.
SpectralField ifrk4_step(const SpectralField& v, double t, double h, const NonlinearFn& g,
                         const std::vector<double>& e_half, const std::vector<double>& e_full) {
    const std::size_t m = v.coefficients.size();
    const SpectralField n1 = g(v, t);

    SpectralField stage(v.grid);
    for (std::size_t i = 0; i < m; ++i)
        stage.coefficients[i] = e_half[i] * (v.coefficients[i] + 0.5 * h * n1.coefficients[i]);
    const SpectralField n2 = g(stage, t + 0.5 * h);

    for (std::size_t i = 0; i < m; ++i)
        stage.coefficients[i] = e_half[i] * v.coefficients[i] + 0.5 * h * n2.coefficients[i];
    const SpectralField n3 = g(stage, t + 0.5 * h);

    for (std::size_t i = 0; i < m; ++i)
        stage.coefficients[i] =
            e_full[i] * v.coefficients[i] + h * e_half[i] * n3.coefficients[i];
    const SpectralField n4 = g(stage, t + h);

    SpectralField out(v.grid);
    for (std::size_t i = 0; i < m; ++i)
        out.coefficients[i] =
            e_full[i] * v.coefficients[i] +
            (h / 6.0) * (e_full[i] * n1.coefficients[i] +
                         2.0 * e_half[i] * (n2.coefficients[i] + n3.coefficients[i]) +
                         n4.coefficients[i]);
    out.at(0, 0) = Complex{};
    return out;
}

DiagnosticsRecord make_record(const SpectralField& theta, double t, double alpha,
                              const DiagnosticsRecord* prev) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.l2 = l2_norm(theta);
    rec.hdot_half_alpha = hdot_norm(theta, alpha / 2.0);
    rec.hdot_one = hdot_norm(theta, 1.0);
    rec.hdot_crit = hdot_norm(theta, 1.0 + alpha / 2.0);
    if (prev) {
        const double a = prev->hdot_crit, b = rec.hdot_crit;
        rec.blowup_integral = prev->blowup_integral + 0.5 * (t - prev->t) * (a * a + b * b);
    }
    return rec;
}

bool cfl_exceeded(const VectorField& u, const SolverConfig& cfg, const GridSpec& grid) {
    const double umax = std::max(max_abs(u.u1), max_abs(u.u2));
    return umax > 0.0 && cfg.dt > 0.5 * grid.dx() / umax;
}

Trajectory run_loop(const SpectralField& theta0, const SolverConfig& cfg, const NonlinearFn& g,
                    const std::function<VectorField(const SpectralField&, double)>& velocity_at) {
    check_config(cfg);
    check_mean_zero(theta0);

    Trajectory traj;
    traj.config = cfg;
    traj.grid = theta0.grid;

    const auto e_half = decay_factors(theta0.grid, cfg.alpha, 0.5 * cfg.dt);
    const auto e_full = decay_factors(theta0.grid, cfg.alpha, cfg.dt);
    const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

    SpectralField theta = theta0;
    theta.at(0, 0) = Complex{};
    traj.times.push_back(0.0);
    traj.snapshots.push_back(theta);
    traj.records.push_back(make_record(theta, 0.0, cfg.alpha, nullptr));
    if (cfl_exceeded(velocity_at(theta, 0.0), cfg, theta.grid)) traj.cfl_warning = true;

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        SpectralField next(theta.grid);
        try {
            next = ifrk4_step(theta, t, cfg.dt, g, e_half, e_full);
            if (!is_finite(next)) throw BlowupError("non-finite values after step", k);
        } catch (const Error&) {
            traj.blowup = BlowupInfo{k, t};
            return traj;
        }
        theta = std::move(next);

        if ((k + 1) % cfg.snapshot_every == 0) {
            const double ts = static_cast<double>(k + 1) * cfg.dt;
            traj.times.push_back(ts);
            traj.snapshots.push_back(theta);
            traj.records.push_back(make_record(theta, ts, cfg.alpha, &traj.records.back()));
            if (!traj.cfl_warning && cfl_exceeded(velocity_at(theta, ts), cfg, theta.grid))
                traj.cfl_warning = true;
        }
    }
    return traj;
}

} // namespace

SpectralField step(const SpectralField& theta, const SolverConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw Error("step: alpha must be in (0, 1]");
    if (!(cfg.dt > 0.0)) throw Error("step: dt must be positive");
    check_mean_zero(theta);
    const auto e_half = decay_factors(theta.grid, cfg.alpha, 0.5 * cfg.dt);
    const auto e_full = decay_factors(theta.grid, cfg.alpha, cfg.dt);
    const NonlinearFn g = [&cfg](const SpectralField& w, double) {
        SpectralField r = nonlinear_term(w, cfg.alpha, cfg.variant, cfg.dealias_on);
        r *= -1.0;
        return r;
    };
    SpectralField out(theta.grid);
    try {
        out = ifrk4_step(theta, 0.0, cfg.dt, g, e_half, e_full);
    } catch (const BlowupError&) {
        throw;
    } catch (const Error& e) {
        throw BlowupError(std::string("step failed mid-stage: ") + e.what());
    }
    if (!is_finite(out)) throw BlowupError("non-finite values after step");
    return out;
}

Trajectory integrate(const SpectralField& theta0, const SolverConfig& cfg) {
    const NonlinearFn g = [&cfg](const SpectralField& w, double) {
        SpectralField r = nonlinear_term(w, cfg.alpha, cfg.variant, cfg.dealias_on);
        r *= -1.0;
        return r;
    };
    const auto velocity_at = [&cfg](const SpectralField& w, double) {
        return riesz_perp_velocity(w, cfg.alpha, cfg.variant);
    };
    return run_loop(theta0, cfg, g, velocity_at);
}

Trajectory integrate(const ScalarField& theta0, const SolverConfig& cfg) {
    return integrate(forward_transform(theta0), cfg);
}

VelocitySamples velocity_from_trajectory(const Trajectory& traj, double alpha, Variant variant) {
    VelocitySamples v;
    v.times = traj.times;
    v.fields.reserve(traj.snapshots.size());
    for (const auto& snap : traj.snapshots)
        v.fields.push_back(riesz_perp_velocity(snap, alpha, variant));
    return v;
}

VelocitySamples zero_velocity(const GridSpec& grid, double t_end) {
    VelocitySamples v;
    v.times = {0.0, t_end};
    VectorField zero{ScalarField(grid), ScalarField(grid)};
    v.fields = {zero, zero};
    return v;
}

namespace {

// Linear interpolation of velocity samples at time t.
VectorField interpolate_velocity(const VelocitySamples& v, double t) {
    const auto& ts = v.times;
    if (t <= ts.front()) return v.fields.front();
    if (t >= ts.back()) return v.fields.back();
    const std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);

    VectorField out = v.fields[lo];
    for (std::size_t i = 0; i < out.u1.samples.size(); ++i) {
        out.u1.samples[i] += w * (v.fields[hi].u1.samples[i] - out.u1.samples[i]);
        out.u2.samples[i] += w * (v.fields[hi].u2.samples[i] - out.u2.samples[i]);
    }
    return out;
}

} // namespace

Trajectory linear_advect_diffuse(const SpectralField& theta0, const VelocitySamples& velocity,
                                 const SolverConfig& cfg) {
    check_config(cfg);
    if (velocity.times.empty() || velocity.times.size() != velocity.fields.size())
        throw Error("linear_advect_diffuse: malformed velocity samples");
    if (velocity.times.back() < cfg.t_end - 1e-12 * cfg.t_end)
        throw Error("linear_advect_diffuse: velocity trajectory shorter than t_end");
    for (const auto& f : velocity.fields) {
        const SpectralField u1 = forward_transform(f.u1);
        const SpectralField u2 = forward_transform(f.u2);
        const std::size_t n = u1.grid.n;
        const double mag = std::max({max_abs(u1), max_abs(u2), 1e-300});
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            const double k1 = u1.grid.freq(i1);
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                const double k2 = u1.grid.freq(i2);
                const Complex div = k1 * u1.at_index(i1, i2) + k2 * u2.at_index(i1, i2);
                if (std::abs(div) > 1e-10 * mag * u1.grid.max_radius())
                    throw Error("linear_advect_diffuse: velocity is not divergence-free");
            }
        }
    }

    const NonlinearFn g = [&](const SpectralField& w, double t) {
        SpectralField r = advect(interpolate_velocity(velocity, t), w, cfg.dealias_on);
        r *= -1.0;
        return r;
    };
    const auto velocity_at = [&velocity](const SpectralField&, double t) {
        return interpolate_velocity(velocity, t);
    };
    return run_loop(theta0, cfg, g, velocity_at);
}

PicardReport picard_iterate(const ScalarField& theta0, const SolverConfig& cfg,
                            std::size_t k_max, double tol) {
    check_config(cfg);
    const SpectralField theta0_hat = forward_transform(theta0);
    check_mean_zero(theta0_hat);

    // The velocity fed to the next linear solve must resolve the step
    // cadence, so the internal trajectories save every step.
    SolverConfig inner = cfg;
    inner.snapshot_every = 1;

    PicardReport report;
    Trajectory prev;  // theta^(0) = 0: empty marker, treated as the zero trajectory
    bool have_prev_traj = false;

    for (std::size_t k = 0; k < k_max; ++k) {
        const double radius =
            std::min(std::ldexp(1.0, static_cast<int>(k) + 1), theta0_hat.grid.max_radius());
        const SpectralField init = spectral_cutoff(theta0_hat, radius);

        const VelocitySamples vel =
            have_prev_traj ? velocity_from_trajectory(prev, cfg.alpha, cfg.variant)
                           : zero_velocity(theta0_hat.grid, cfg.t_end);
        Trajectory next = linear_advect_diffuse(init, vel, inner);
        if (next.blowup)
            throw BlowupError("picard_iterate: linear solve blew up at level " + std::to_string(k),
                              next.blowup->step_index);

        double d = 0.0;
        for (std::size_t i = 0; i < next.snapshots.size(); ++i) {
            SpectralField diff = next.snapshots[i];
            if (have_prev_traj) diff -= prev.snapshots[i];
            d = std::max(d, l2_norm(diff));
        }
        report.increments.push_back(d);
        report.iterations = k + 1;
        if (report.increments.size() >= 2) {
            const double dprev = report.increments[report.increments.size() - 2];
            report.ratios.push_back(dprev > 0.0 ? d / dprev : 0.0);
        }
        prev = std::move(next);
        have_prev_traj = true;

        if (d <= tol) {
            report.converged = true;
            break;
        }
    }
    report.non_contractive = !report.converged &&
        (report.ratios.empty() || report.ratios.back() >= 1.0);
    return report;
}

} // namespace mqg
