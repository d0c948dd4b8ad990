#pragma once

#include <cstdint>
#include <string>

#include "mqg/field.hpp"
#include "mqg/solver.hpp"

namespace mqg {

/// Flat key = value run configuration. Unknown keys are rejected; missing
/// keys take the documented defaults.
struct RunConfig {
    std::size_t n = 128;
    double domain_length = kTwoPi;
    double alpha = 0.5;
    Variant variant = Variant::MQG;
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;
    std::size_t snapshot_every = 10;
    std::uint64_t seed = 0;
    std::string initial = "single_mode";  // builtin name or snapshot path
};

/// Parse config text. Lines are `key = value`; blank lines and lines starting
/// with '#' are ignored. Malformed lines, unknown keys and out-of-range
/// values raise ConfigError naming the line and key.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

SolverConfig to_solver_config(const RunConfig& cfg);

/// Materialize the initial data: one of the builtins single_mode (sin x1),
/// two_mode (sin x1 + cos 2 x2), random_h1 (decay-2 random spectrum with
/// ||.||_{H^1} = 1), or a .mqg / .csv file path. File grids must match n.
/// The mean is removed in all cases.
ScalarField build_initial_data(const RunConfig& cfg);

/// Resolved config as key = value lines (round-trips through the parser).
std::string format_run_config(const RunConfig& cfg);

const char* variant_name(Variant v);

} // namespace mqg
