#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace catcode {

// Provenance block embedded in every output artifact so a result can be
// reproduced from the file alone. Deliberately excludes execution-resource
// settings (worker counts, output paths): artifacts must be byte-identical
// for any scheduling of the same semantic run.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> config;
    std::string version;
    std::uint64_t seed = 0;
};

}  // namespace catcode
