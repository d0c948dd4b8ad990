#pragma once

#include <string>

#include "mqg/field.hpp"
#include "mqg/littlewood_paley.hpp"
#include "mqg/solver.hpp"

namespace mqg {

/// Binary snapshot, little-endian: magic "MQG1", u32 n, f64 domain_length,
/// then n^2 f64 samples row-major.
void write_snapshot(const std::string& path, const ScalarField& f);
ScalarField read_snapshot(const std::string& path);

/// CSV form with header x_index,y_index,value.
void write_field_csv(const std::string& path, const ScalarField& f);
ScalarField read_field_csv(const std::string& path, double domain_length = kTwoPi);

/// series.csv: t,l2,hdot_half_alpha,hdot_one,hdot_crit,energy_residual,blowup_integral.
void write_series_csv(const std::string& path, const Trajectory& traj);

/// Block energies: q,block_l2,weighted_2sq with weight 2^{2sq} * block_l2^2.
void write_block_energies_csv(const std::string& path, const SpectralField& f,
                              const PartitionSpec& p, double s);

/// K estimate sweep: T,K_value.
void write_kestimate_csv(const std::string& path, const KEstimate& est);

} // namespace mqg
