#include "sqrtn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace sqrtn {

void RunManifest::add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}

namespace {

nlohmann::ordered_json manifest_core(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.params) p[k] = v;
    j["params"] = p;
    j["seed"] = m.seed;
    j["threads"] = m.threads;
    j["version"] = m.version;
    return j;
}

}  // namespace

std::string RunManifest::to_json() const { return manifest_core(*this).dump(); }

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for checksum: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

void write_manifest_json(const std::string& path, const RunManifest& m, double wall_time_s,
                         const std::vector<std::pair<std::string, std::uint64_t>>& checksums) {
    nlohmann::ordered_json j = manifest_core(m);
    j["wall_time_s"] = wall_time_s;
    nlohmann::ordered_json cs = nlohmann::ordered_json::object();
    char hex[17];
    for (const auto& [name, sum] : checksums) {
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(sum));
        cs[name] = hex;
    }
    j["checksums"] = cs;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace sqrtn
