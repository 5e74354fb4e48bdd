#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/version.hpp"

namespace cfl {

/// FNV-1a over a file's bytes; the digest that goes into run manifests.
inline std::string fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io_error, "cannot read " + path.string());
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (in.eof()) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

/// Writes <dir>/run.manifest: the command, tool version, the effective
/// configuration (line-oriented key=value under sections) and a digest per
/// output file. Deliberately carries no timestamps, so a re-run of the same
/// configuration produces a byte-identical manifest.
inline void write_manifest(const std::filesystem::path& dir, const std::string& command,
                           const std::string& config_ini,
                           const std::vector<std::filesystem::path>& outputs) {
    std::ofstream out(dir / "run.manifest");
    if (!out) throw error(errc::io_error, "cannot write manifest in " + dir.string());
    out << "[run]\n";
    out << "tool=cfl\n";
    out << "version=" << version << "\n";
    out << "command=" << command << "\n";
    out << "\n[config]\n" << config_ini;
    out << "\n[outputs]\n";
    for (const auto& f : outputs) out << f.filename().string() << "=" << fnv1a64_file(f) << "\n";
}

} // namespace cfl
