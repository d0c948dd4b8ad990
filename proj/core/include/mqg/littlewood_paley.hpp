#pragma once

#include <map>
#include <span>
#include <vector>

#include "mqg/field.hpp"

namespace mqg {

/// Dyadic partition of the frequency lattice. The radial profile equals 1 on
/// [0,1], 0 on [2,inf), and bridges smoothly in between with the exp(-1/x)
/// bump, so low_pass(q) multiplies by profile(|xi|/2^q) and block q by
/// profile(|xi|/2^{q+1}) - profile(|xi|/2^q), supported on 2^q <= |xi| <= 2^{q+2}.
struct PartitionSpec {
    int q_min = -1;
    int q_max = 0;

    static double profile(double r) {
        if (r <= 1.0) return 1.0;
        if (r >= 2.0) return 0.0;
        const double a = bump(2.0 - r);
        const double b = bump(r - 1.0);
        return a / (a + b);
    }

  private:
    static double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
};

/// q_min = -1 keeps only the mean in the low part; q_max covers the lattice.
PartitionSpec build_partition(const GridSpec& grid);

/// Low-pass S_q: multiply by profile(|xi|/2^q). Valid for q in [q_min, q_max+1].
SpectralField s_q(const SpectralField& f, const PartitionSpec& p, int q);

/// Dyadic block Delta_q = S_{q+1} - S_q. Valid for q in [q_min, q_max].
SpectralField delta_q(const SpectralField& f, const PartitionSpec& p, int q);

/// All blocks plus the low part; low + sum(blocks) reconstructs f.
struct LPDecomposition {
    std::map<int, SpectralField> blocks;
    SpectralField low;
};
LPDecomposition decompose(const SpectralField& f, const PartitionSpec& p);

/// L2 norms of the dyadic blocks, indexed q_min..q_max.
std::vector<double> block_l2_norms(const SpectralField& f, const PartitionSpec& p);

enum class SobolevKind { Homogeneous, Inhomogeneous };
enum class NormMethod { Direct, LP };

/// Sobolev norm, either by direct lattice sum or by the dyadic block sum
/// (blockwise form of the same norm, equivalent up to fixed constants).
double sobolev_norm(const SpectralField& f, double sigma, SobolevKind kind, NormMethod method,
                    const PartitionSpec& p);

/// Mixed time-frequency norm: per block q, the L^r-in-time norm of
/// ||Delta_q v(t)||_2 by trapezoidal quadrature (max over snapshots when
/// r = inf), then the 2^{sq}-weighted l2 sum over q. Snapshots must be
/// uniformly spaced; r < inf needs at least two of them.
double chemin_lerner_norm(std::span<const double> times, std::span<const SpectralField> fields,
                          double r, double s, const PartitionSpec& p);

/// Local-existence functional:
///   K_{r,s}(theta,T) = || w_q(T) 2^{sq} ||Delta_q theta||_2 ||_{l2(q)},
///   w_q = [(1 - e^{-nu r 2^{alpha q} T}) / (nu r)]^{1/r}  (w_q = 1 for r = inf).
double k_functional(const SpectralField& theta0, double alpha, double nu, double r, double s,
                    double T, const PartitionSpec& p);

/// K_{2,1} sweep over a time grid; K_values are nondecreasing in T.
struct KEstimate {
    double nu = 1.0;
    double r = 2.0;
    double s = 1.0;
    std::vector<double> T_grid;
    std::vector<double> K_values;
};
KEstimate k_sweep(const SpectralField& theta0, double alpha, double nu, double r, double s,
                  std::span<const double> T_grid, const PartitionSpec& p);

/// Largest T with K_{2,1}(theta0, T) <= epsilon, found by bisection on the
/// monotone map T -> K. Returns +inf when even the T -> inf limit stays below
/// epsilon (in particular for theta0 = 0).
double existence_time_estimate(const SpectralField& theta0, double alpha, double nu,
                               double epsilon, const PartitionSpec& p);

} // namespace mqg
