#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pulse {

// FNV-1a over a byte range; the manifest's artifact checksum.
inline uint64_t fnv1a(std::string_view bytes) {
    uint64_t h = 1469598103934665603ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a_hex_of_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(ss.str())));
    return buf;
}

// Writes via a temp file in the same directory, then renames into place, so
// consumers never observe partial output.
inline void atomic_write(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        writer(os);
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Execution record: per-stage parameters and checksums of every artifact the
// pipeline produced. Audit metadata, refreshed after each stage.
class PipelineManifest {
public:
    explicit PipelineManifest(uint64_t master_seed) {
        doc_["master_seed"] = master_seed;
        doc_["stages"] = nlohmann::json::array();
    }

    void add_stage(const std::string& name, nlohmann::json params,
                   const std::vector<std::filesystem::path>& outputs) {
        nlohmann::json stage;
        stage["name"] = name;
        stage["params"] = std::move(params);
        auto& arts = stage["outputs"] = nlohmann::json::array();
        for (const auto& p : outputs) {
            arts.push_back({{"path", p.filename().string()},
                            {"bytes", std::filesystem::file_size(p)},
                            {"fnv1a", fnv1a_hex_of_file(p)}});
        }
        doc_["stages"].push_back(std::move(stage));
    }

    void save(const std::filesystem::path& path) const {
        atomic_write(path, [&](std::ostream& os) { os << doc_.dump(2) << '\n'; });
    }

private:
    nlohmann::json doc_;
};

}  // namespace pulse
