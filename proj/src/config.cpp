#include "pamab/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pamab/registry.hpp"

namespace pamab {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

ProtocolKind protocol_kind_from(const std::string& s) {
  if (s == "full-access") return ProtocolKind::full_access;
  if (s == "block-switching") return ProtocolKind::block_switching;
  throw ConfigError({"protocol.kind: unknown protocol '" + s + "'"});
}

BetaMode beta_mode_from(const std::string& s) {
  if (s == "experiment") return BetaMode::experiment;
  if (s == "theory") return BetaMode::theory;
  throw ConfigError({"beta.mode: unknown mode '" + s + "'"});
}

void check_vector(std::vector<std::string>& errors, const std::string& field, const Vec& v,
                  std::size_t expected, bool non_negative) {
  if (v.size() != expected) {
    errors.push_back(field + ": length " + std::to_string(v.size()) + " != D (" +
                     std::to_string(expected) + ")");
  }
  if (non_negative) {
    for (std::size_t d = 0; d < v.size(); ++d) {
      if (!(v[d] >= 0.0)) {
        errors.push_back(field + "[" + std::to_string(d) + "]: negative value " +
                         std::to_string(v[d]));
      }
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config: " + join(problems)), problems_(std::move(problems)) {}

std::string to_string(ProtocolKind kind) {
  return kind == ProtocolKind::full_access ? "full-access" : "block-switching";
}

std::string to_string(BetaMode mode) {
  return mode == BetaMode::experiment ? "experiment" : "theory";
}

ValidationReport check_config(const RunConfig& cfg) {
  ValidationReport report;
  auto& errors = report.errors;
  const auto& dims = cfg.dims;

  if (cfg.schema_version != kSchemaVersion) {
    errors.push_back("schema_version: unsupported version " + std::to_string(cfg.schema_version));
  }
  if (dims.num_arms < 1) errors.push_back("dims.K: must be >= 1");
  if (dims.num_objectives < 1) errors.push_back("dims.D: must be >= 1");
  if (dims.num_users < 1) errors.push_back("dims.N: must be >= 1");
  if (dims.horizon < 1) errors.push_back("dims.T: must be >= 1");
  if (cfg.trials < 1) errors.push_back("trials: must be >= 1");

  const auto D = static_cast<std::size_t>(std::max(dims.num_objectives, 0));
  if (static_cast<int>(cfg.arms.size()) != dims.num_arms) {
    errors.push_back("arms: arm model count (" + std::to_string(cfg.arms.size()) + ") != K (" +
                     std::to_string(dims.num_arms) + ")");
  }
  for (std::size_t i = 0; i < cfg.arms.size(); ++i) {
    const std::string prefix = "arms[" + std::to_string(i) + "]";
    check_vector(errors, prefix + ".mean", cfg.arms[i].mean, D, false);
    check_vector(errors, prefix + ".variance", cfg.arms[i].variance, D, true);
  }
  if (static_cast<int>(cfg.users.size()) != dims.num_users) {
    errors.push_back("users: user model count (" + std::to_string(cfg.users.size()) + ") != N (" +
                     std::to_string(dims.num_users) + ")");
  }
  for (std::size_t n = 0; n < cfg.users.size(); ++n) {
    const std::string prefix = "users[" + std::to_string(n) + "]";
    check_vector(errors, prefix + ".mean", cfg.users[n].mean, D, true);
    check_vector(errors, prefix + ".variance", cfg.users[n].variance, D, true);
  }

  if (cfg.protocol.kind == ProtocolKind::block_switching) {
    if (cfg.protocol.block_size < 1) {
      errors.push_back("protocol.block_size: must be >= 1");
    } else if (dims.num_arms != dims.num_users * cfg.protocol.block_size) {
      errors.push_back("protocol.block_size: K (" + std::to_string(dims.num_arms) +
                       ") != N * block_size (" + std::to_string(dims.num_users) + " * " +
                       std::to_string(cfg.protocol.block_size) + ")");
    }
  }

  if (cfg.algorithms.empty()) errors.push_back("algorithms: empty algorithm list");
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    const auto& spec = cfg.algorithms[a];
    const std::string prefix = "algorithms[" + std::to_string(a) + "]";
    if (!is_registered_algorithm(spec.name)) {
      errors.push_back(prefix + ".name: unknown algorithm '" + spec.name + "'");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (cfg.algorithms[b].name == spec.name) {
        errors.push_back(prefix + ".name: duplicate algorithm '" + spec.name + "'");
        break;
      }
    }
    if (!(spec.alpha > 0.0)) errors.push_back(prefix + ".alpha: must be > 0");
    if (!(spec.lambda > 0.0)) errors.push_back(prefix + ".lambda: must be > 0");
    if (!(spec.omega > 0.0)) errors.push_back(prefix + ".omega: must be > 0");
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
      errors.push_back(prefix + ".epsilon: must lie in [0, 1]");
    }
    if (!(spec.beta.scale >= 0.0)) errors.push_back(prefix + ".beta.scale: must be >= 0");
    if (!(spec.beta.confidence > 0.0 && spec.beta.confidence < 1.0)) {
      errors.push_back(prefix + ".beta.confidence: must lie in (0, 1)");
    }
    if (!(spec.pareto_exponent >= 0.0)) {
      errors.push_back(prefix + ".pareto_exponent: must be >= 0");
    }
    if (!spec.weights.empty()) check_vector(errors, prefix + ".weights", spec.weights, D, true);
  }
  return report;
}

const RunConfig& validate_config(const RunConfig& cfg) {
  auto report = check_config(cfg);
  if (!report.ok()) throw ConfigError(std::move(report.errors));
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["dims"] = {{"K", cfg.dims.num_arms},
               {"D", cfg.dims.num_objectives},
               {"N", cfg.dims.num_users},
               {"T", cfg.dims.horizon}};
  j["arms"] = json::array();
  for (const auto& arm : cfg.arms) {
    j["arms"].push_back({{"mean", arm.mean}, {"variance", arm.variance}});
  }
  j["users"] = json::array();
  for (const auto& user : cfg.users) {
    j["users"].push_back(
        {{"mean", user.mean}, {"variance", user.variance}, {"normalize", user.normalize}});
  }
  j["protocol"] = {{"kind", to_string(cfg.protocol.kind)},
                   {"block_size", cfg.protocol.block_size}};
  j["algorithms"] = json::array();
  for (const auto& spec : cfg.algorithms) {
    j["algorithms"].push_back({{"name", spec.name},
                               {"alpha", spec.alpha},
                               {"lambda", spec.lambda},
                               {"omega", spec.omega},
                               {"beta",
                                {{"mode", to_string(spec.beta.mode)},
                                 {"scale", spec.beta.scale},
                                 {"confidence", spec.beta.confidence}}},
                               {"epsilon", spec.epsilon},
                               {"weights", spec.weights},
                               {"pareto_exponent", spec.pareto_exponent}});
  }
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  try {
    if (!j.is_object()) throw ConfigError({"config: top-level value must be an object"});
    std::vector<std::string> missing;
    for (const char* key : {"dims", "arms", "users", "algorithms"}) {
      if (!j.contains(key)) missing.push_back(std::string(key) + ": missing required field");
    }
    if (!missing.empty()) throw ConfigError(std::move(missing));

    cfg.schema_version = j.value("schema_version", kSchemaVersion);
    const auto& dims = j.at("dims");
    cfg.dims.num_arms = dims.at("K").get<int>();
    cfg.dims.num_objectives = dims.at("D").get<int>();
    cfg.dims.num_users = dims.at("N").get<int>();
    cfg.dims.horizon = dims.at("T").get<int>();

    for (const auto& a : j.at("arms")) {
      cfg.arms.push_back({a.at("mean").get<Vec>(), a.at("variance").get<Vec>()});
    }
    for (const auto& u : j.at("users")) {
      cfg.users.push_back(
          {u.at("mean").get<Vec>(), u.at("variance").get<Vec>(), u.value("normalize", false)});
    }
    if (j.contains("protocol")) {
      const auto& p = j.at("protocol");
      cfg.protocol.kind = protocol_kind_from(p.value("kind", std::string("full-access")));
      cfg.protocol.block_size = p.value("block_size", 5);
    }
    for (const auto& a : j.at("algorithms")) {
      AlgorithmSpec spec;
      spec.name = a.at("name").get<std::string>();
      spec.alpha = a.value("alpha", 1.0);
      spec.lambda = a.value("lambda", 1.0);
      spec.omega = a.value("omega", static_cast<double>(cfg.dims.num_objectives));
      if (a.contains("beta")) {
        const auto& b = a.at("beta");
        spec.beta.mode = beta_mode_from(b.value("mode", std::string("experiment")));
        spec.beta.scale = b.value("scale", 0.1);
        spec.beta.confidence = b.value("confidence", 0.1);
      }
      spec.epsilon = a.value("epsilon", 0.05);
      spec.weights = a.value("weights", Vec{});
      spec.pareto_exponent = a.value("pareto_exponent", 0.25);
      cfg.algorithms.push_back(std::move(spec));
    }
    cfg.trials = j.value("trials", 10);
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: JSON parse error: ") + e.what()});
  }
  return config_from_json(j);
}

std::string serialize_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open '" + path.string() + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError({"override '" + assignment + "': expected KEY=VALUE"});
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json* node = &j;
  std::stringstream path(key);
  std::string part;
  while (std::getline(path, part, '.')) {
    if (node->is_object() && node->contains(part)) {
      node = &(*node)[part];
    } else if (node->is_array() && !part.empty() &&
               std::all_of(part.begin(), part.end(), ::isdigit) &&
               std::stoul(part) < node->size()) {
      node = &(*node)[std::stoul(part)];
    } else {
      throw ConfigError({"override '" + key + "': no such key in config schema"});
    }
  }
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  *node = std::move(value);
}

RunConfig apply_overrides(const RunConfig& cfg, const std::vector<std::string>& assignments) {
  if (assignments.empty()) return cfg;
  json j = to_json(cfg);
  for (const auto& a : assignments) apply_override(j, a);
  return config_from_json(j);
}

std::string config_digest(const RunConfig& cfg) {
  const std::string canonical = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pamab
