#include "risopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace risopt {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvRow& header,
               const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    auto emit = [&out](const CsvRow& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    };
    emit(header);
    for (const CsvRow& row : rows) {
        if (row.size() != header.size())
            throw std::runtime_error("row arity mismatch writing " + path);
        emit(row);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << out.str();
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_run_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["config_path"] = m.config_path;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(m.config_hash));
    j["config_fnv1a64"] = hash;
    j["rectifier_fit"] = {{"c_per_w", m.fit_c},
                          {"d_w", m.fit_d},
                          {"p_sat_w", m.fit_p_sat},
                          {"rms_residual_w", m.fit_rms}};
    j["delta"] = m.delta;
    if (m.has_seed) j["seed"] = m.seed;
    j["outputs"] = m.outputs;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace risopt
