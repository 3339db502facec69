#include "spinelab/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace spinelab {

namespace fs = std::filesystem;

std::string cache_directory(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("SPINELAB_CACHE"); env && *env) return env;
    return ".spinelab-cache";
}

std::optional<std::string> cache_load(const std::string& key, const std::string& override_dir) {
    fs::path p = fs::path(cache_directory(override_dir)) / (key + ".jsonl");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void cache_store(const std::string& key, const std::string& contents,
                 const std::string& override_dir) {
    fs::path dir = cache_directory(override_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return;  // cache is best-effort
    fs::path tmp = dir / (key + ".tmp");
    fs::path final = dir / (key + ".jsonl");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << contents;
    }
    fs::rename(tmp, final, ec);
}

} // namespace spinelab
