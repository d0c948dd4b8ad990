#pragma once

#include <string>
#include <vector>

#include "mqg/littlewood_paley.hpp"
#include "mqg/random_fields.hpp"
#include "mqg/solver.hpp"

namespace mqg {

/// Relative residual of the L2 energy balance on interior snapshots:
///   |(E_{k+1} - E_{k-1}) / (2 dt) + 2 D_k| / max(D_k, floor)
/// with E = ||theta||_2^2 and D = ||Lambda^{alpha/2} theta||_2^2.
/// Needs at least 3 snapshots.
std::vector<double> energy_identity_residual(const Trajectory& traj);

/// Fill the energy_residual column of traj.records (endpoints stay 0).
void attach_energy_residuals(Trajectory& traj);

struct MaxPrincipleReport {
    bool pass = true;
    double worst_violation = 0.0;  // largest relative increase between snapshots
    std::size_t worst_index = 0;
};
/// Checks that ||theta||_2 is nonincreasing across snapshots within 1e-12
/// relative slack.
MaxPrincipleReport verify_maximum_principle(const Trajectory& traj);

struct BlowupReport {
    std::vector<double> integral;   // running int_0^t ||theta||_{Hdot^{1+alpha/2}}^2
    bool suspect = false;
    bool has_fit = false;
    double fitted_exponent = 0.0;   // slope of log hdot_crit vs log(T* - t), last decade
};
BlowupReport blowup_monitor(const Trajectory& traj);

struct ScalingReport {
    std::vector<double> check_times;  // times of run B
    std::vector<double> rel_diffs;    // sup-norm differences relative to field scale
    double sup_rel_diff = 0.0;
    double field_scale = 0.0;
};
/// Compare the run from theta0(lambda x) at time t against the run from
/// theta0 at time lambda^alpha t, spatially rescaled. lambda must be a power
/// of two >= 2 with lambda * (max active frequency) inside the dealias band.
ScalingReport scaling_check(const ScalarField& theta0, int lambda, const SolverConfig& cfg);

struct SmoothingReport {
    int q_half = 0;
    std::vector<double> times;
    std::vector<double> tail_energy;  // sum_{q >= q_half} 2^{2q} ||Delta_q theta||_2^2
    std::vector<double> tail_ratio;   // tail(t) / tail(0), 0 when tail(0) = 0
    std::vector<double> h2_norm;
};
SmoothingReport smoothing_report(const Trajectory& traj, const PartitionSpec& p);

enum class ProbeKind { BernsteinLower, BernsteinUpper, RieszLp, Product, Commutator };

struct ProbeParams {
    double gamma = 0.25;   // bernstein exponent / riesz exponent
    double alpha = 0.5;    // velocity-law exponent (riesz, commutator)
    double s = 1.0;        // commutator regularity index
    double sigma1 = 0.5;   // product-law indices
    double sigma2 = 0.5;
    double lp_p = 2.0;     // bernstein-upper source norm
    double lp_r = kInf;    // bernstein-upper target norm
    int q_lo = 0;          // dyadic range for blockwise probes
    int q_hi = 4;
    Variant variant = Variant::MQG;
};

struct ProbeSample {
    std::uint64_t seed = 0;
    int q = 0;          // meaningful only when the probe is blockwise
    double ratio = 0.0;
};

struct ProbeReport {
    std::string inequality;
    bool blockwise = false;
    std::size_t ensemble_size = 0;
    std::vector<ProbeSample> samples;
    double min_ratio = 0.0;
    double median_ratio = 0.0;
    double max_ratio = 0.0;
    bool bounded = false;  // verdict at the probe's threshold
};

/// Measure the left/right ratio of one inequality over a seeded ensemble.
/// Blockwise probes (bernstein_*, commutator) emit one sample per (seed, q).
/// The verdict is "bounded" when every ratio is finite and within the probe's
/// threshold: the annulus bracket [2^{-2 gamma}, 2^{2 gamma}] for the
/// bernstein lower bound, max/min <= 1e3 for the others.
ProbeReport probe_inequality(ProbeKind kind, const EnsembleSpec& ensemble,
                             std::size_t ensemble_size, const ProbeParams& params);

const char* probe_name(ProbeKind kind);

} // namespace mqg
