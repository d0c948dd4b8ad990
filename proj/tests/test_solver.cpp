#include "doctest.h"

#include "mqg/random_fields.hpp"
#include "mqg/solver.hpp"
#include "mqg/transform.hpp"
#include "test_support.hpp"

using namespace mqg;
using namespace mqg::test;

namespace {

SpectralField sin_mode(const GridSpec& g, int k) {
    SpectralField f(g);
    f.at(k, 0) = Complex(0.0, -0.5);
    f.at(-k, 0) = Complex(0.0, 0.5);
    return f;
}

SolverConfig basic_config(double dt, double t_end) {
    SolverConfig cfg;
    cfg.alpha = 0.5;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.snapshot_every = 10;
    return cfg;
}

} // namespace

TEST_CASE("single decaying mode is integrated exactly per step") {
    const GridSpec g(32);
    SolverConfig cfg = basic_config(0.01, 1.0);
    SUBCASE("|xi| = 1: factor e^{-h}") {
        for (double alpha : {0.3, 0.5, 1.0}) {
            cfg.alpha = alpha;
            const SpectralField next = step(sin_mode(g, 1), cfg);
            SpectralField expect = sin_mode(g, 1);
            expect *= std::exp(-cfg.dt);
            CHECK(max_coeff_diff(next, expect) < 1e-13);
        }
    }
    SUBCASE("|xi| = 2, alpha = 0.5: factor e^{-sqrt(2) h}") {
        const SpectralField next = step(sin_mode(g, 2), cfg);
        SpectralField expect = sin_mode(g, 2);
        expect *= std::exp(-std::sqrt(2.0) * cfg.dt);
        CHECK(max_coeff_diff(next, expect) < 1e-13);
    }
}

TEST_CASE("step rejects non-mean-zero input and bad config") {
    const GridSpec g(32);
    SpectralField f = sin_mode(g, 1);
    f.at(0, 0) = 1.0;
    CHECK_THROWS_AS(step(f, basic_config(0.01, 1.0)), Error);
    SolverConfig bad = basic_config(0.01, 1.0);
    bad.alpha = 1.5;
    CHECK_THROWS_AS(step(sin_mode(g, 1), bad), Error);
}

TEST_CASE("local Richardson order of the step is at least 3.8") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.seed = 4;
    spec.decay = 2.0;
    spec.band_limit = 8;
    SpectralField theta = random_field(spec);
    normalize_h(theta, 1.0, 0.5);

    std::vector<double> errs;
    for (double h : {4e-2, 2e-2, 1e-2}) {
        SolverConfig one = basic_config(h, 1.0);
        SolverConfig half = basic_config(h / 2.0, 1.0);
        const SpectralField big = step(theta, one);
        const SpectralField small = step(step(theta, half), half);
        errs.push_back(max_coeff_diff(big, small));
    }
    const double slope1 = std::log2(errs[0] / errs[1]);
    const double slope2 = std::log2(errs[1] / errs[2]);
    CHECK(slope1 >= 3.8);
    CHECK(slope2 >= 3.8);
}

TEST_CASE("integrate: exact decay run hits e^{-1} sin(x1) at t = 1") {
    const GridSpec g(32);
    const Trajectory traj = integrate(sin_mode(g, 1), basic_config(1e-3, 1.0));
    REQUIRE(!traj.blowup);
    CHECK(traj.times.size() == 101);
    CHECK(traj.times.front() == 0.0);
    SpectralField expect = sin_mode(g, 1);
    expect *= std::exp(-1.0);
    CHECK(max_coeff_diff(traj.snapshots.back(), expect) < 1e-7);
    // l2 record matches the closed form pi sqrt(2) e^{-t}
    const double want = kPi * std::sqrt(2.0) * std::exp(-0.5);
    CHECK(traj.records[50].l2 == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("integrate: zero data stays zero") {
    const GridSpec g(32);
    const Trajectory traj = integrate(SpectralField(g), basic_config(1e-2, 0.5));
    for (const auto& s : traj.snapshots) CHECK(max_abs(s) == 0.0);
}

TEST_CASE("random small-data run: mean stays zero, L2 never grows") {
    EnsembleSpec spec;
    spec.n = 64;
    spec.seed = 12;
    spec.decay = 2.0;
    SpectralField theta0 = random_field(spec);
    normalize_h(theta0, 1.0, 1.0);

    SolverConfig cfg = basic_config(2e-3, 0.3);
    cfg.snapshot_every = 5;
    const Trajectory traj = integrate(theta0, cfg);
    REQUIRE(!traj.blowup);
    for (const auto& s : traj.snapshots) CHECK(s.at(0, 0) == Complex{});
    for (std::size_t k = 1; k < traj.records.size(); ++k)
        CHECK(traj.records[k].l2 <= traj.records[k - 1].l2 * (1.0 + 1e-12));
}

TEST_CASE("blowup signal carries the failing step and truncates the run") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.seed = 3;
    spec.decay = 2.0;
    SpectralField theta0 = random_field(spec);
    normalize_h(theta0, 1.0, 1.0);

    SolverConfig cfg = basic_config(0.5, 30.0);  // massively violates the advective CFL
    cfg.snapshot_every = 1;
    const Trajectory traj = integrate(theta0, cfg);
    REQUIRE(traj.blowup.has_value());
    CHECK(traj.snapshots.size() == traj.blowup->step_index + 1);
    CHECK(traj.cfl_warning);
    for (const auto& s : traj.snapshots) CHECK(is_finite(s));
}

TEST_CASE("frozen zero velocity gives the exact fractional heat flow") {
    const GridSpec g(32);
    SpectralField theta0 = sin_mode(g, 2);
    const SolverConfig cfg = basic_config(1e-2, 0.5);
    const Trajectory traj = linear_advect_diffuse(theta0, zero_velocity(g, 0.5), cfg);
    REQUIRE(!traj.blowup);
    SpectralField expect = sin_mode(g, 2);
    expect *= std::exp(-std::sqrt(2.0) * 0.5);
    CHECK(max_coeff_diff(traj.snapshots.back(), expect) < 1e-13);
}

TEST_CASE("frozen shear velocity reproduces the nonlinear shear run") {
    const GridSpec g(32);
    const SpectralField theta0 = sin_mode(g, 1);
    const SolverConfig cfg = basic_config(1e-2, 0.5);

    const Trajectory nonlinear = integrate(theta0, cfg);
    const VelocitySamples vel = velocity_from_trajectory(nonlinear, cfg.alpha, cfg.variant);
    const Trajectory frozen = linear_advect_diffuse(theta0, vel, cfg);
    for (std::size_t i = 0; i < frozen.snapshots.size(); ++i)
        CHECK(max_coeff_diff(frozen.snapshots[i], nonlinear.snapshots[i]) < 1e-14);
}

TEST_CASE("frozen-velocity runs obey the L2 bound sup_t ||theta|| <= ||theta0||") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.decay = 2.0;
    const SolverConfig cfg = basic_config(1e-3, 0.2);

    for (std::uint64_t seed : {41u, 42u, 43u}) {
        spec.seed = seed;
        SpectralField source = random_field(spec);
        normalize_h(source, 1.0, 1.0);
        // velocity frozen from a short nonlinear run of unrelated data
        const Trajectory vrun = integrate(source, cfg);
        REQUIRE(!vrun.blowup);
        const VelocitySamples vel = velocity_from_trajectory(vrun, cfg.alpha, cfg.variant);

        spec.seed = seed + 100;
        SpectralField theta0 = random_field(spec);
        normalize_h(theta0, 1.0, 1.0);
        const Trajectory traj = linear_advect_diffuse(theta0, vel, cfg);
        REQUIRE(!traj.blowup);
        const double bound = l2_norm(theta0) + 1e-10;
        for (const auto& r : traj.records) CHECK(r.l2 <= bound);
    }
}

TEST_CASE("linear solve validates its velocity input") {
    const GridSpec g(32);
    const SpectralField theta0 = sin_mode(g, 1);
    const SolverConfig cfg = basic_config(1e-2, 0.5);

    SUBCASE("too-short trajectory") {
        CHECK_THROWS_AS(linear_advect_diffuse(theta0, zero_velocity(g, 0.2), cfg), Error);
    }
    SUBCASE("velocity with divergence") {
        VelocitySamples vel = zero_velocity(g, 0.5);
        for (auto& f : vel.fields)
            f.u1 = sample(g, [](double x1, double) { return std::sin(x1); });
        CHECK_THROWS_AS(linear_advect_diffuse(theta0, vel, cfg), Error);
    }
}

TEST_CASE("picard: zero data converges immediately with zero increment") {
    const GridSpec g(32);
    const PicardReport report =
        picard_iterate(ScalarField(g), basic_config(1e-2, 0.25), 5, 1e-12);
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK(report.increments[0] == 0.0);
}

TEST_CASE("picard: the shear mode is a fixed point after one level") {
    const GridSpec g(32);
    const ScalarField theta0 = sample(g, [](double x1, double) { return std::sin(x1); });
    const PicardReport report = picard_iterate(theta0, basic_config(1e-2, 0.25), 6, 1e-11);
    CHECK(report.converged);
    REQUIRE(report.increments.size() >= 2);
    CHECK(report.increments[1] <= 1e-11);
}

TEST_CASE("picard: small data contracts at every reported level") {
    EnsembleSpec spec;
    spec.n = 32;
    spec.seed = 9;
    spec.decay = 2.0;
    SpectralField theta0 = random_field(spec);
    normalize_h(theta0, 1.0, 0.05);

    SolverConfig cfg = basic_config(2e-3, 0.25);
    const PicardReport report = picard_iterate(inverse_transform(theta0), cfg, 6, 1e-14);
    REQUIRE(report.ratios.size() >= 4);
    for (double r : report.ratios) CHECK(r < 1.0);
    CHECK(!report.non_contractive);
}
