#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace minpart {

// Everything needed to rerun a command; embedded in every artifact.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0x5EED;
    double tol = 1e-8;
    int threads = 0;  // 0 = auto
};

nlohmann::json config_json(const RunConfig& cfg);

std::uint64_t fnv1a64(std::string_view data);
std::string hash_hex(std::uint64_t h);

// body + {"config": ..., "content_hash": ...}; the hash covers the dump of
// everything except the hash field itself, so artifacts are self-checking.
nlohmann::json finalize_artifact(nlohmann::json body, const RunConfig& cfg);

// Recompute the embedded hash; false on mismatch or missing fields.
bool validate_artifact(const nlohmann::json& artifact);

// Write via temp file + rename so readers never observe partial artifacts.
void write_artifact_atomic(const std::filesystem::path& path,
                           const std::string& payload);

void write_json_artifact(const std::filesystem::path& path,
                         const nlohmann::json& artifact);

// RFC-4180-style quoting; header row first.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows);

// CSV with a fixed column order; header row first, atomic write.
void write_csv_artifact(const std::filesystem::path& path,
                        const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::string>>& rows);

}  // namespace minpart
