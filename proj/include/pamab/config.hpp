#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pamab/types.hpp"

namespace pamab {

// Thrown for malformed or invalid configurations. `problems()` lists every
// violated field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ValidationReport check_config(const RunConfig& cfg);

// Returns cfg unchanged when valid, otherwise throws ConfigError.
const RunConfig& validate_config(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);  // canonical form
RunConfig load_config(const std::filesystem::path& path);

// Applies a KEY=VALUE override with a dotted key path ("trials", "dims.T",
// "algorithms.0.alpha"). The key must already exist in the canonical JSON.
void apply_override(nlohmann::json& j, const std::string& assignment);
RunConfig apply_overrides(const RunConfig& cfg, const std::vector<std::string>& assignments);

// FNV-1a over the canonical JSON, rendered as 16 hex digits.
std::string config_digest(const RunConfig& cfg);

std::string to_string(ProtocolKind kind);
std::string to_string(BetaMode mode);

}  // namespace pamab
