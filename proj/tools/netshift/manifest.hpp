#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace netshift_cli {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a 64-bit digest of a file's raw bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

// Reproducibility header embedded in every output: command name, resolved
// parameters, input file digests, master seed, and tool version. Rerunning
// with an identical manifest yields byte-identical outputs.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& parameters,
                             const std::vector<std::pair<std::string, std::string>>& inputs,
                             std::uint64_t rng_seed);

}  // namespace netshift_cli
