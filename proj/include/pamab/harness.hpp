#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pamab/metrics.hpp"
#include "pamab/types.hpp"

namespace pamab {

// A trial aborted by a policy or environment error.
class TrialError : public std::runtime_error {
 public:
  TrialError(const std::string& algorithm, int trial, int round, const std::string& what);
  int round() const { return round_; }

 private:
  int round_;
};

// Executes one trial of the round loop. The config must be validated.
TrialRecord run_trial(const RunConfig& cfg, const AlgorithmSpec& spec, int trial);

// Rebuilds the per-round regret from a record's action log by replaying the
// availability protocol.
Vec replay_regret(const RunConfig& cfg, const TrialRecord& record);

struct TrialFailure {
  std::string algorithm;
  int trial = 0;
  std::string message;
};

struct ExperimentResult {
  int schema_version = kSchemaVersion;
  std::string config_digest;
  std::vector<std::string> algorithms;
  std::vector<std::vector<TrialRecord>> records;  // [algorithm][k], trial ascending
  std::vector<double> wall_seconds;                // summed trial time per algorithm
  std::vector<TrialFailure> failures;

  std::vector<TrialRecord> all_records() const;
};

struct ExecutionOptions {
  // 1 runs the serial reference loop; more distributes (algorithm, trial)
  // jobs over OpenMP threads. 0 uses the OpenMP default.
  int threads = 1;
};

ExperimentResult run_experiment(const RunConfig& cfg, const ExecutionOptions& options = {});

struct ManifestEntry {
  std::filesystem::path path;
  std::uintmax_t bytes = 0;
};

// Writes results.csv, summary.json and config.echo.json into out_dir.
std::vector<ManifestEntry> persist(const ExperimentResult& result, const RunConfig& cfg,
                                   const std::filesystem::path& out_dir);

// The CSV body exactly as persist writes it.
std::string results_csv(const ExperimentResult& result);

}  // namespace pamab
