#pragma once

namespace mqg {

/// Per-snapshot scalar diagnostics recorded along a run. energy_residual is
/// filled post hoc (centered differences need both neighbors) and stays 0 at
/// the endpoints; blowup_integral is the running trapezoid of hdot_crit^2.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2 = 0.0;
    double hdot_half_alpha = 0.0;
    double hdot_one = 0.0;
    double hdot_crit = 0.0;
    double energy_residual = 0.0;
    double blowup_integral = 0.0;
};

} // namespace mqg
