#ifndef SPINELAB_MANIFEST_HPP
#define SPINELAB_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "spinelab/numbers.hpp"

namespace spinelab {

using ojson = nlohmann::ordered_json;

// Reproducibility record for one command invocation. The digest hashes the
// canonical result bytes only, so identical flags and seed imply identical
// digests regardless of timing or thread count.
struct RunManifest {
    std::string command;
    ojson parameters;
    std::string code_version{kVersion};
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;
    long long cache_hits = 0;
    std::string result_digest;

    ojson to_json() const {
        ojson j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["code_version"] = code_version;
        j["seed"] = seed;
        j["elapsed_ms"] = elapsed_ms;
        j["cache_hits"] = cache_hits;
        j["result_digest"] = result_digest;
        return j;
    }
};

} // namespace spinelab

#endif
