#ifndef SPINELAB_CACHE_HPP
#define SPINELAB_CACHE_HPP

#include <optional>
#include <string>

namespace spinelab {

// On-disk result cache: one file per key under the cache directory.
// Resolution order for the directory: explicit argument, SPINELAB_CACHE
// environment variable, ".spinelab-cache" in the working directory.
std::string cache_directory(const std::string& override_dir = {});

std::optional<std::string> cache_load(const std::string& key,
                                      const std::string& override_dir = {});

void cache_store(const std::string& key, const std::string& contents,
                 const std::string& override_dir = {});

} // namespace spinelab

#endif
