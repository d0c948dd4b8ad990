// Batch driver: parse a run config, dispatch one command, emit CSV/binary
// artifacts plus a JSON manifest listing every produced file.
//
// Exit codes: 0 success, 1 validation error, 2 blowup signal, 3 probe
// verdict failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mqg/diagnostics.hpp"
#include "mqg/run_config.hpp"
#include "mqg/snapshot_io.hpp"
#include "mqg/transform.hpp"
#include "mqg/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBlowup = 2;
constexpr int kExitProbeFail = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct Manifest {
    json doc;
    fs::path dir;

    explicit Manifest(const fs::path& out_dir, const std::string& command) : dir(out_dir) {
        doc["command"] = command;
        doc["version"] = mqg::kVersion;
        doc["started"] = timestamp();
        doc["outputs"] = json::array();
        doc["exit_status"] = kExitOk;
    }
    void add_output(const fs::path& path) {
        doc["outputs"].push_back(
            {{"path", fs::relative(path, dir).string()}, {"bytes", fs::file_size(path)}});
    }
    void finish(int status) {
        doc["finished"] = timestamp();
        doc["exit_status"] = status;
        std::ofstream out(dir / "manifest.json");
        out << doc.dump(2) << '\n';
    }
};

int check_manifest(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    std::ifstream in(path);
    if (!in) {
        std::cerr << "no manifest at " << path << '\n';
        return kExitValidation;
    }
    json doc;
    in >> doc;
    bool ok = true;
    for (const auto& entry : doc["outputs"]) {
        const fs::path p = dir / entry["path"].get<std::string>();
        if (!fs::exists(p)) {
            std::cerr << "missing: " << p << '\n';
            ok = false;
        } else if (fs::file_size(p) != entry["bytes"].get<std::uintmax_t>()) {
            std::cerr << "size mismatch: " << p << " (" << fs::file_size(p) << " vs "
                      << entry["bytes"] << ")\n";
            ok = false;
        }
    }
    std::cout << (ok ? "manifest ok" : "manifest check failed") << " ("
              << doc["outputs"].size() << " files)\n";
    return ok ? kExitOk : kExitValidation;
}

json config_json(const mqg::RunConfig& cfg) {
    return {{"n", cfg.n},
            {"domain_length", cfg.domain_length},
            {"alpha", cfg.alpha},
            {"variant", mqg::variant_name(cfg.variant)},
            {"dt", cfg.dt},
            {"t_end", cfg.t_end},
            {"dealias", cfg.dealias},
            {"snapshot_every", cfg.snapshot_every},
            {"seed", cfg.seed},
            {"initial", cfg.initial}};
}

int cmd_run(const std::string& config_path, Manifest& man) {
    const mqg::RunConfig cfg = mqg::load_run_config(config_path);
    man.doc["config"] = config_json(cfg);
    man.doc["seed"] = cfg.seed;

    mqg::Trajectory traj = mqg::integrate(mqg::build_initial_data(cfg), mqg::to_solver_config(cfg));
    if (traj.records.size() >= 3) mqg::attach_energy_residuals(traj);
    if (traj.cfl_warning)
        std::cerr << "warning: dt exceeds 0.5*dx/max|u|; the advective CFL is violated\n";

    mqg::write_series_csv((man.dir / "series.csv").string(), traj);
    man.add_output(man.dir / "series.csv");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06zu.mqg", i);
        mqg::write_snapshot((man.dir / name).string(),
                            mqg::inverse_transform(traj.snapshots[i]));
        man.add_output(man.dir / name);
    }

    if (traj.blowup) {
        man.doc["blowup_step"] = traj.blowup->step_index;
        man.doc["blowup_time"] = traj.blowup->time;
        std::cerr << "blowup signal at step " << traj.blowup->step_index << " (t = "
                  << fmt(traj.blowup->time) << "); outputs truncated\n";
        return kExitBlowup;
    }
    std::cout << "run complete: " << traj.snapshots.size() << " snapshots, final ||theta||_2 = "
              << fmt(traj.records.back().l2) << '\n';
    return kExitOk;
}

int cmd_probe(const std::string& name, mqg::EnsembleSpec ensemble, std::size_t count,
              const mqg::ProbeParams& params, Manifest& man) {
    mqg::ProbeKind kind;
    if (name == "bernstein_lower") kind = mqg::ProbeKind::BernsteinLower;
    else if (name == "bernstein_upper") kind = mqg::ProbeKind::BernsteinUpper;
    else if (name == "riesz_lp") kind = mqg::ProbeKind::RieszLp;
    else if (name == "product") kind = mqg::ProbeKind::Product;
    else if (name == "commutator") kind = mqg::ProbeKind::Commutator;
    else throw mqg::Error("unknown probe: " + name);

    const mqg::ProbeReport report = mqg::probe_inequality(kind, ensemble, count, params);

    const fs::path csv = man.dir / ("probe_" + name + ".csv");
    std::ofstream out(csv);
    if (report.blockwise) {
        out << "sample_seed,q,ratio\n";
        for (const auto& s : report.samples)
            out << s.seed << ',' << s.q << ',' << fmt(s.ratio) << '\n';
    } else {
        out << "sample_seed,ratio\n";
        for (const auto& s : report.samples) out << s.seed << ',' << fmt(s.ratio) << '\n';
    }
    out.close();
    man.add_output(csv);
    man.doc["probe"] = {{"inequality", report.inequality},
                        {"ensemble_size", report.ensemble_size},
                        {"min", report.min_ratio},
                        {"median", report.median_ratio},
                        {"max", report.max_ratio},
                        {"bounded", report.bounded}};
    std::cout << name << ": min " << fmt(report.min_ratio) << ", median "
              << fmt(report.median_ratio) << ", max " << fmt(report.max_ratio) << ", verdict "
              << (report.bounded ? "bounded" : "unbounded") << '\n';
    return report.bounded ? kExitOk : kExitProbeFail;
}

int cmd_existence_time(const std::string& config_path, double nu, double epsilon, double r,
                       double s, double t_min, double t_max, std::size_t points, Manifest& man) {
    const mqg::RunConfig cfg = mqg::load_run_config(config_path);
    man.doc["config"] = config_json(cfg);
    man.doc["seed"] = cfg.seed;

    const mqg::SpectralField theta0 = mqg::forward_transform(mqg::build_initial_data(cfg));
    const mqg::PartitionSpec part = mqg::build_partition(theta0.grid);

    std::vector<double> grid(points);
    const double step = std::log(t_max / t_min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = t_min * std::exp(step * static_cast<double>(i));
    const mqg::KEstimate est = mqg::k_sweep(theta0, cfg.alpha, nu, r, s, grid, part);

    mqg::write_kestimate_csv((man.dir / "kestimate.csv").string(), est);
    man.add_output(man.dir / "kestimate.csv");

    const double T = mqg::existence_time_estimate(theta0, cfg.alpha, nu, epsilon, part);
    man.doc["existence_time"] = std::isinf(T) ? json("inf") : json(T);
    std::cout << "existence-time estimate (epsilon = " << fmt(epsilon) << "): "
              << (std::isinf(T) ? std::string("unbounded") : fmt(T)) << '\n';
    return kExitOk;
}

int cmd_scaling_check(const std::string& config_path, int lambda, Manifest& man) {
    const mqg::RunConfig cfg = mqg::load_run_config(config_path);
    man.doc["config"] = config_json(cfg);
    man.doc["seed"] = cfg.seed;

    const mqg::ScalingReport report =
        mqg::scaling_check(mqg::build_initial_data(cfg), lambda, mqg::to_solver_config(cfg));

    const fs::path csv = man.dir / "scaling.csv";
    std::ofstream out(csv);
    out << "t,rel_sup_diff\n";
    for (std::size_t i = 0; i < report.check_times.size(); ++i)
        out << fmt(report.check_times[i]) << ',' << fmt(report.rel_diffs[i]) << '\n';
    out.close();
    man.add_output(csv);
    man.doc["scaling"] = {{"lambda", lambda}, {"sup_rel_diff", report.sup_rel_diff}};
    std::cout << "scaling check (lambda = " << lambda
              << "): sup relative difference = " << fmt(report.sup_rel_diff) << '\n';
    return kExitOk;
}

int cmd_compare_oracle(std::size_t n, std::uint64_t seed, double alpha, mqg::Variant variant,
                       Manifest& man) {
    mqg::EnsembleSpec spec;
    spec.seed = seed;
    spec.n = n;
    spec.decay = 1.0;
    spec.band_limit = static_cast<int>(n) / 3;
    const mqg::SpectralField theta = mqg::random_field(spec);

    const mqg::SpectralField fast = mqg::nonlinear_term(theta, alpha, variant, true);
    const mqg::SpectralField exact =
        mqg::dealias(mqg::nonlinear_term_oracle(theta, alpha, variant));
    const double diff = mqg::max_abs(fast - exact);

    const fs::path csv = man.dir / "compare_oracle.csv";
    std::ofstream out(csv);
    out << "seed,alpha,max_abs_diff\n" << seed << ',' << fmt(alpha) << ',' << fmt(diff) << '\n';
    out.close();
    man.add_output(csv);
    man.doc["compare_oracle"] = {{"max_abs_diff", diff}};
    std::cout << "pseudo-spectral vs direct convolution: max coefficient difference = "
              << fmt(diff) << '\n';
    return kExitOk;
}

int cmd_picard(const std::string& config_path, std::size_t k_max, double tol, Manifest& man) {
    const mqg::RunConfig cfg = mqg::load_run_config(config_path);
    man.doc["config"] = config_json(cfg);
    man.doc["seed"] = cfg.seed;

    const mqg::PicardReport report =
        mqg::picard_iterate(mqg::build_initial_data(cfg), mqg::to_solver_config(cfg), k_max, tol);

    const fs::path csv = man.dir / "picard.csv";
    std::ofstream out(csv);
    out << "k,increment,ratio\n";
    for (std::size_t k = 0; k < report.increments.size(); ++k) {
        out << k << ',' << fmt(report.increments[k]) << ',';
        if (k >= 1) out << fmt(report.ratios[k - 1]);
        out << '\n';
    }
    out.close();
    man.add_output(csv);
    man.doc["picard"] = {{"iterations", report.iterations},
                         {"converged", report.converged},
                         {"non_contractive", report.non_contractive}};
    std::cout << "picard: " << report.iterations << " iterations, "
              << (report.converged ? "converged" : "not converged to tol") << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral toolkit for the dissipative quasi-geostrophic family"};
    app.require_subcommand(0, 1);

    std::string output_dir;
    if (const char* env = std::getenv("MQG_OUTPUT_DIR")) output_dir = env;
    if (output_dir.empty()) output_dir = ".";
    app.add_option("--output-dir", output_dir, "output directory (or env MQG_OUTPUT_DIR)");

    bool do_check_manifest = false;
    app.add_flag("--check-manifest", do_check_manifest,
                 "verify presence and sizes of the files listed in manifest.json, then exit");

    std::string config_path;
    auto* run = app.add_subcommand("run", "integrate the equation and emit series + snapshots");
    run->add_option("config", config_path, "run config file")->required();

    std::string probe_name_arg = "bernstein_lower";
    mqg::EnsembleSpec ensemble;
    std::size_t ensemble_size = 20;
    mqg::ProbeParams params;
    auto* probe = app.add_subcommand("probe", "measure an inequality over a random ensemble");
    probe->add_option("--name", probe_name_arg,
                      "bernstein_lower|bernstein_upper|riesz_lp|product|commutator");
    probe->add_option("--n", ensemble.n, "grid size");
    probe->add_option("--seed", ensemble.seed, "base seed");
    probe->add_option("--decay", ensemble.decay, "spectrum decay exponent");
    probe->add_option("--band-limit", ensemble.band_limit, "|xi|_inf support bound (0 = full)");
    probe->add_option("--ensemble-size", ensemble_size, "number of samples (>= 10)");
    probe->add_option("--gamma", params.gamma, "exponent for bernstein/riesz probes");
    probe->add_option("--alpha", params.alpha, "velocity-law exponent");
    probe->add_option("--s", params.s, "commutator regularity index");
    probe->add_option("--sigma1", params.sigma1, "product-law index 1");
    probe->add_option("--sigma2", params.sigma2, "product-law index 2");
    probe->add_option("--q-lo", params.q_lo, "lowest dyadic index");
    probe->add_option("--q-hi", params.q_hi, "highest dyadic index");

    double nu = 1.0, epsilon = 0.1, kr = 2.0, ks = 1.0, t_min = 1e-3, t_max = 1e2;
    std::size_t k_points = 41;
    auto* exist = app.add_subcommand("existence-time",
                                     "K-functional sweep and largest T with K <= epsilon");
    exist->add_option("config", config_path, "run config file (initial data source)")->required();
    exist->add_option("--nu", nu, "dissipation constant nu > 0");
    exist->add_option("--epsilon", epsilon, "smallness threshold");
    exist->add_option("--r", kr, "time exponent r >= 2");
    exist->add_option("--s", ks, "regularity index s");
    exist->add_option("--t-min", t_min, "sweep start");
    exist->add_option("--t-max", t_max, "sweep end");
    exist->add_option("--points", k_points, "sweep points");

    int lambda = 2;
    auto* scaling = app.add_subcommand("scaling-check", "compare a run against its rescaling");
    scaling->add_option("config", config_path, "run config file")->required();
    scaling->add_option("--lambda", lambda, "rescaling factor (power of two >= 2)");

    std::size_t oracle_n = 16;
    std::uint64_t oracle_seed = 7;
    double oracle_alpha = 0.5;
    std::string oracle_variant = "MQG";
    auto* compare = app.add_subcommand("compare-oracle",
                                       "pseudo-spectral nonlinear term vs direct convolution");
    compare->add_option("--n", oracle_n, "grid size (<= 32)");
    compare->add_option("--seed", oracle_seed, "field seed");
    compare->add_option("--alpha", oracle_alpha, "velocity-law exponent");
    compare->add_option("--variant", oracle_variant, "MQG or QG");

    std::size_t k_max = 8;
    double tol = 1e-10;
    auto* picard = app.add_subcommand("picard", "successive-linearization iteration report");
    picard->add_option("config", config_path, "run config file")->required();
    picard->add_option("--k-max", k_max, "maximum iterations");
    picard->add_option("--tol", tol, "convergence tolerance on sup_t L2 increments");

    CLI11_PARSE(app, argc, argv);

    const fs::path out_dir(output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    if (do_check_manifest) return check_manifest(out_dir);
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitValidation;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Manifest man(out_dir, command);
    int status = kExitOk;
    try {
        if (run->parsed()) status = cmd_run(config_path, man);
        else if (probe->parsed())
            status = cmd_probe(probe_name_arg, ensemble, ensemble_size, params, man);
        else if (exist->parsed())
            status = cmd_existence_time(config_path, nu, epsilon, kr, ks, t_min, t_max,
                                        k_points, man);
        else if (scaling->parsed()) status = cmd_scaling_check(config_path, lambda, man);
        else if (compare->parsed())
            status = cmd_compare_oracle(oracle_n, oracle_seed, oracle_alpha,
                                        oracle_variant == "QG" ? mqg::Variant::QG
                                                               : mqg::Variant::MQG,
                                        man);
        else if (picard->parsed()) status = cmd_picard(config_path, k_max, tol, man);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        man.doc["error"] = e.what();
        status = kExitValidation;
    }
    man.finish(status);
    return status;
}
