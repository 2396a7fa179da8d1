#include "minpart/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace minpart {

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["params"] = cfg.params;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tol;
    j["threads"] = cfg.threads;
    return j;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json finalize_artifact(nlohmann::json body, const RunConfig& cfg) {
    body["config"] = config_json(cfg);
    body.erase("content_hash");
    body["content_hash"] = hash_hex(fnv1a64(body.dump()));
    return body;
}

bool validate_artifact(const nlohmann::json& artifact) {
    if (!artifact.is_object() || !artifact.contains("content_hash") ||
        !artifact.contains("config"))
        return false;
    nlohmann::json copy = artifact;
    const auto stored = copy["content_hash"];
    if (!stored.is_string()) return false;
    copy.erase("content_hash");
    return hash_hex(fnv1a64(copy.dump())) == stored.get<std::string>();
}

void write_artifact_atomic(const std::filesystem::path& path,
                           const std::string& payload) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp~";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << payload;
        if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_json_artifact(const std::filesystem::path& path,
                         const nlohmann::json& artifact) {
    write_artifact_atomic(path, artifact.dump(2) + "\n");
}

namespace {

std::string csv_escape(const std::string& field) {
    bool needs_quote = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n') needs_quote = true;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string payload;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) payload += ',';
        payload += csv_escape(columns[i]);
    }
    payload += '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("csv row width does not match the header");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) payload += ',';
            payload += csv_escape(row[i]);
        }
        payload += '\n';
    }
    return payload;
}

void write_csv_artifact(const std::filesystem::path& path,
                        const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::string>>& rows) {
    write_artifact_atomic(path, csv_table(columns, rows));
}

}  // namespace minpart
