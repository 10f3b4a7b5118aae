#pragma once
// Output plumbing for the CLI: delimited tables with stable formatting, the
// config fingerprint, and the sidecar run manifest.
#include <cstdint>
#include <string>
#include <vector>

namespace risopt {

// Fixed "%.12g" rendering; non-finite values become "inf", "-inf", "nan".
std::string format_number(double v);

using CsvRow = std::vector<std::string>;

// Writes header + rows, comma-separated, one trailing newline per line.
// Every row must match the header arity. Byte-stable for identical inputs.
void write_csv(const std::string& path, const CsvRow& header,
               const std::vector<CsvRow>& rows);

std::string read_file(const std::string& path);

// FNV-1a 64-bit over raw bytes, for config fingerprinting.
std::uint64_t fnv1a64(const std::string& bytes);

// Provenance sidecar written next to each table.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t config_hash = 0;
    double fit_c = 0.0;
    double fit_d = 0.0;
    double fit_p_sat = 0.0;
    double fit_rms = 0.0;
    double delta = 0.0;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
};

void write_run_manifest(const std::string& path, const RunManifest& m);

}  // namespace risopt
