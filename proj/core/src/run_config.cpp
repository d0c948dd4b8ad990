#include "mqg/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mqg/random_fields.hpp"
#include "mqg/snapshot_io.hpp"
#include "mqg/transform.hpp"

namespace mqg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': not a number: '" + v + "'", line, key);
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': trailing characters in '" + v + "'", line, key);
    return x;
}

std::uint64_t parse_uint(const std::string& v, int line, const std::string& key) {
    const double x = parse_double(v, line, key);
    if (x < 0.0 || x != std::floor(x))
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected a nonnegative integer", line, key);
    return static_cast<std::uint64_t>(x);
}

bool parse_flag(const std::string& v, int line, const std::string& key) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "': expected on/off", line, key);
}

[[noreturn]] void range_error(int line, const std::string& key, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': " + what,
                      line, key);
}

} // namespace

const char* variant_name(Variant v) { return v == Variant::MQG ? "MQG" : "QG"; }

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" +
                              s + "'", line, "");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key or value", line, key);

        if (key == "n") {
            const auto n = parse_uint(value, line, key);
            if (n < 8 || (n & (n - 1)) != 0) range_error(line, key, "n must be a power of two >= 8");
            cfg.n = static_cast<std::size_t>(n);
        } else if (key == "domain_length") {
            cfg.domain_length = parse_double(value, line, key);
            if (!(cfg.domain_length > 0.0)) range_error(line, key, "must be positive");
        } else if (key == "alpha") {
            cfg.alpha = parse_double(value, line, key);
            if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
                range_error(line, key, "alpha must lie in (0, 1]");
        } else if (key == "variant") {
            if (value == "MQG") cfg.variant = Variant::MQG;
            else if (value == "QG") cfg.variant = Variant::QG;
            else range_error(line, key, "expected MQG or QG");
        } else if (key == "dt") {
            cfg.dt = parse_double(value, line, key);
            if (!(cfg.dt > 0.0)) range_error(line, key, "must be positive");
        } else if (key == "t_end") {
            cfg.t_end = parse_double(value, line, key);
            if (!(cfg.t_end > 0.0)) range_error(line, key, "must be positive");
        } else if (key == "dealias") {
            cfg.dealias = parse_flag(value, line, key);
        } else if (key == "snapshot_every") {
            const auto v = parse_uint(value, line, key);
            if (v == 0) range_error(line, key, "must be >= 1");
            cfg.snapshot_every = static_cast<std::size_t>(v);
        } else if (key == "seed") {
            cfg.seed = parse_uint(value, line, key);
        } else if (key == "initial") {
            cfg.initial = value;
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'",
                              line, key);
        }
    }
    if (!(cfg.dt < cfg.t_end))
        throw ConfigError("dt must be smaller than t_end", 0, "dt");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

SolverConfig to_solver_config(const RunConfig& cfg) {
    SolverConfig s;
    s.alpha = cfg.alpha;
    s.variant = cfg.variant;
    s.dt = cfg.dt;
    s.t_end = cfg.t_end;
    s.dealias_on = cfg.dealias;
    s.snapshot_every = cfg.snapshot_every;
    return s;
}

ScalarField build_initial_data(const RunConfig& cfg) {
    const GridSpec grid(cfg.n, cfg.domain_length);

    const auto sample_modes = [&](auto&& fn) {
        ScalarField f(grid);
        for (std::size_t j1 = 0; j1 < grid.n; ++j1) {
            const double x1 = kTwoPi * static_cast<double>(j1) / static_cast<double>(grid.n);
            for (std::size_t j2 = 0; j2 < grid.n; ++j2) {
                const double x2 = kTwoPi * static_cast<double>(j2) / static_cast<double>(grid.n);
                f.at(j1, j2) = fn(x1, x2);
            }
        }
        return f;
    };

    if (cfg.initial == "single_mode")
        return sample_modes([](double x1, double) { return std::sin(x1); });
    if (cfg.initial == "two_mode")
        return sample_modes(
            [](double x1, double x2) { return std::sin(x1) + std::cos(2.0 * x2); });
    if (cfg.initial == "random_h1") {
        EnsembleSpec spec;
        spec.seed = cfg.seed;
        spec.n = cfg.n;
        spec.domain_length = cfg.domain_length;
        spec.decay = 2.0;
        SpectralField f = random_field(spec);
        normalize_h(f, 1.0, 1.0);
        return inverse_transform(f);
    }

    // otherwise a file path
    ScalarField f = cfg.initial.size() > 4 && cfg.initial.ends_with(".csv")
                        ? read_field_csv(cfg.initial, cfg.domain_length)
                        : read_snapshot(cfg.initial);
    if (f.grid.n != cfg.n)
        throw Error("initial data grid n = " + std::to_string(f.grid.n) +
                    " does not match config n = " + std::to_string(cfg.n));
    double mean = 0.0;
    for (double v : f.samples) mean += v;
    mean /= static_cast<double>(f.samples.size());
    for (double& v : f.samples) v -= mean;
    return f;
}

std::string format_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    char buf[40];
    out << "n = " << cfg.n << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", cfg.domain_length);
    out << "domain_length = " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", cfg.alpha);
    out << "alpha = " << buf << '\n';
    out << "variant = " << variant_name(cfg.variant) << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", cfg.dt);
    out << "dt = " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", cfg.t_end);
    out << "t_end = " << buf << '\n';
    out << "dealias = " << (cfg.dealias ? "on" : "off") << '\n';
    out << "snapshot_every = " << cfg.snapshot_every << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "initial = " << cfg.initial << '\n';
    return out.str();
}

} // namespace mqg
