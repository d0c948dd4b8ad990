#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mqg/diagnostics_record.hpp"
#include "mqg/field.hpp"
#include "mqg/operators.hpp"

namespace mqg {

enum class Integrator { IFRK4 };

struct SolverConfig {
    double alpha = 0.5;          // dissipation exponent, in (0, 1]
    Variant variant = Variant::MQG;
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias_on = true;
    std::size_t snapshot_every = 10;
    Integrator integrator = Integrator::IFRK4;
};

struct BlowupInfo {
    std::size_t step_index = 0;  // index of the step that produced non-finite values
    double time = 0.0;           // time at the start of that step
};

struct Trajectory {
    SolverConfig config;
    GridSpec grid;
    std::vector<double> times;              // snapshot times, times[0] = 0
    std::vector<SpectralField> snapshots;
    std::vector<DiagnosticsRecord> records; // one per snapshot
    std::optional<BlowupInfo> blowup;
    bool cfl_warning = false;               // dt exceeded 0.5*dx/max|u| at some snapshot
};

/// One integrating-factor RK4 step of the full nonlinear dynamics. The
/// dissipative part is integrated exactly via e^{-|xi|^alpha h}; only the
/// advection is treated explicitly. Requires mean-zero theta; throws
/// BlowupError when the result is not finite.
SpectralField step(const SpectralField& theta, const SolverConfig& cfg);

/// Integrate from t = 0 to t_end, saving a snapshot and a diagnostics record
/// every snapshot_every steps. On blowup the trajectory is truncated at the
/// last healthy snapshot and flagged.
Trajectory integrate(const ScalarField& theta0, const SolverConfig& cfg);
Trajectory integrate(const SpectralField& theta0, const SolverConfig& cfg);

/// Time-sampled divergence-free velocity for the frozen-velocity problem.
struct VelocitySamples {
    std::vector<double> times;       // increasing
    std::vector<VectorField> fields; // physical-space samples
};

/// Velocity samples derived from a trajectory via the variant's velocity law.
VelocitySamples velocity_from_trajectory(const Trajectory& traj, double alpha, Variant variant);

/// Zero velocity on [0, t_end].
VelocitySamples zero_velocity(const GridSpec& grid, double t_end);

/// Linear advection-diffusion with a given velocity, interpolated linearly in
/// time between its samples. The samples must be divergence-free and cover
/// [0, t_end] at least at the step cadence.
Trajectory linear_advect_diffuse(const SpectralField& theta0, const VelocitySamples& velocity,
                                 const SolverConfig& cfg);

/// Successive linearization: theta^(0) = 0 and theta^(k+1) solves the linear
/// problem with velocity frozen from theta^(k), starting from theta0 cut to
/// the ball |xi| <= 2^{k+1} (saturating at the lattice). increments[k] is
/// sup_t ||theta^(k+1) - theta^(k)||_2; ratios are consecutive quotients.
struct PicardReport {
    std::vector<double> increments;
    std::vector<double> ratios;
    bool converged = false;
    bool non_contractive = false;
    std::size_t iterations = 0;
};
PicardReport picard_iterate(const ScalarField& theta0, const SolverConfig& cfg,
                            std::size_t k_max, double tol);

} // namespace mqg
