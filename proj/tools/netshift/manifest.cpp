#include "manifest.hpp"

#include "netshift/errors.hpp"
#include "netshift/rng.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace netshift_cli {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw netshift::InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(netshift::detail::fnv1a64(bytes)));
  return hex;
}

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& parameters,
                             const std::vector<std::pair<std::string, std::string>>& inputs,
                             std::uint64_t rng_seed) {
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [name, path] : inputs)
    in[name] = {{"path", path}, {"digest", file_digest(path)}};
  return nlohmann::json{
      {"command", command}, {"inputs", in},         {"parameters", parameters},
      {"rng_seed", rng_seed}, {"version", kVersion},
  };
}

}  // namespace netshift_cli
