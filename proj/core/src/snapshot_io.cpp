#include "mqg/snapshot_io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace mqg {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are unsupported");

namespace {

constexpr char kMagic[4] = {'M', 'Q', 'G', '1'};

// %.17g round-trips doubles exactly and keeps CSV output bit-stable.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
    std::ofstream out(path, mode);
    if (!out) throw Error("cannot open for writing: " + path);
    return out;
}

} // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    auto out = open_out(path, std::ios::binary);
    const std::uint32_t n = static_cast<std::uint32_t>(f.grid.n);
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&f.grid.domain_length), sizeof(double));
    out.write(reinterpret_cast<const char*>(f.samples.data()),
              static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
    if (!out) throw Error("write failed: " + path);
}

ScalarField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot: " + path);
    char magic[4];
    std::uint32_t n = 0;
    double length = 0.0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&length), sizeof length);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw Error("not an MQG1 snapshot: " + path);
    ScalarField f{GridSpec(n, length)};
    in.read(reinterpret_cast<char*>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
    if (!in) throw Error("truncated snapshot: " + path);
    return f;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
    auto out = open_out(path);
    out << "x_index,y_index,value\n";
    for (std::size_t j1 = 0; j1 < f.grid.n; ++j1)
        for (std::size_t j2 = 0; j2 < f.grid.n; ++j2)
            out << j1 << ',' << j2 << ',' << fmt(f.at(j1, j2)) << '\n';
    if (!out) throw Error("write failed: " + path);
}

ScalarField read_field_csv(const std::string& path, double domain_length) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open field CSV: " + path);
    std::string header;
    std::getline(in, header);
    if (header != "x_index,y_index,value")
        throw Error("unexpected field CSV header in " + path);

    std::vector<std::tuple<std::size_t, std::size_t, double>> rows;
    std::size_t j1 = 0, j2 = 0;
    double v = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (std::sscanf(line.c_str(), "%zu,%zu,%lf", &j1, &j2, &v) != 3)
            throw Error("bad field CSV row: " + line);
        rows.emplace_back(j1, j2, v);
    }
    std::size_t n = 1;
    while (n * n < rows.size()) n *= 2;
    if (n * n != rows.size()) throw Error("field CSV is not a full power-of-two grid");
    ScalarField f{GridSpec(n, domain_length)};
    for (const auto& [a, b, val] : rows) {
        if (a >= n || b >= n) throw Error("field CSV index out of range");
        f.at(a, b) = val;
    }
    return f;
}

void write_series_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,l2,hdot_half_alpha,hdot_one,hdot_crit,energy_residual,blowup_integral\n";
    for (const auto& r : traj.records)
        out << fmt(r.t) << ',' << fmt(r.l2) << ',' << fmt(r.hdot_half_alpha) << ','
            << fmt(r.hdot_one) << ',' << fmt(r.hdot_crit) << ',' << fmt(r.energy_residual)
            << ',' << fmt(r.blowup_integral) << '\n';
    if (!out) throw Error("write failed: " + path);
}

void write_block_energies_csv(const std::string& path, const SpectralField& f,
                              const PartitionSpec& p, double s) {
    auto out = open_out(path);
    out << "q,block_l2,weighted_2sq\n";
    const auto norms = block_l2_norms(f, p);
    for (int q = p.q_min; q <= p.q_max; ++q) {
        const double b = norms[static_cast<std::size_t>(q - p.q_min)];
        out << q << ',' << fmt(b) << ',' << fmt(std::pow(2.0, 2.0 * s * q) * b * b) << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

void write_kestimate_csv(const std::string& path, const KEstimate& est) {
    auto out = open_out(path);
    out << "T,K_value\n";
    for (std::size_t i = 0; i < est.T_grid.size(); ++i)
        out << fmt(est.T_grid[i]) << ',' << fmt(est.K_values[i]) << '\n';
    if (!out) throw Error("write failed: " + path);
}

} // namespace mqg
