#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sqrtn {

// Reproducibility plumbing for the CLI: every run writes a data CSV whose
// first line is a '#'-prefixed JSON header of the deterministic run
// parameters, plus a manifest.json sidecar that additionally records
// wall time and output checksums. Keeping the volatile fields out of the
// CSV keeps same-seed single-threaded reruns byte-identical.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // insertion order kept
    std::uint64_t seed = 0;
    int threads = 1;
    std::string version = "0.1.0";

    void add_param(const std::string& key, const std::string& value);
    // {"command":..., "params":{...}, "seed":..., "threads":..., "version":...}
    std::string to_json() const;
};

std::uint64_t fnv1a64_file(const std::string& path);

// Writes manifest JSON (deterministic core + wall_time_s + checksums) to path.
void write_manifest_json(const std::string& path, const RunManifest& m, double wall_time_s,
                         const std::vector<std::pair<std::string, std::uint64_t>>& checksums);

// 17 significant digits: round-trips any double exactly.
std::string format_g17(double x);

}  // namespace sqrtn
