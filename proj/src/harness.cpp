#include "pamab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "pamab/config.hpp"
#include "pamab/env.hpp"
#include "pamab/linalg.hpp"
#include "pamab/policies.hpp"
#include "pamab/registry.hpp"
#include "pamab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pamab {

TrialError::TrialError(const std::string& algorithm, int trial, int round, const std::string& what)
    : std::runtime_error(algorithm + " trial " + std::to_string(trial) + " round " +
                         std::to_string(round) + ": " + what),
      round_(round) {}

namespace {

std::vector<Vec> preference_means(const RunConfig& cfg) {
  std::vector<Vec> means;
  for (const auto& u : cfg.users) means.push_back(u.mean);
  return means;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("persist: cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("persist: write failed for '" + path.string() + "'");
}

}  // namespace

TrialRecord run_trial(const RunConfig& cfg, const AlgorithmSpec& spec, int trial) {
  const auto& dims = cfg.dims;
  const auto info = find_algorithm(spec.name);
  if (!info) throw TrialError(spec.name, trial, 0, "unknown algorithm");
  const auto N = static_cast<std::size_t>(dims.num_users);
  const auto T = static_cast<std::size_t>(dims.horizon);
  const auto trial_key = static_cast<std::uint64_t>(trial);

  RandomStream protocol_stream = derive_rng_stream(cfg.base_seed, trial_key, StreamRole::protocol);
  RandomStream reward_stream = derive_rng_stream(cfg.base_seed, trial_key, StreamRole::reward);
  RandomStream preference_stream =
      derive_rng_stream(cfg.base_seed, trial_key, StreamRole::preference);

  PolicyContext context{dims, info->regime == FeedbackRegime::known ? preference_means(cfg)
                                                                    : std::vector<Vec>{},
                        derive_rng_stream(cfg.base_seed, trial_key, StreamRole::policy)};
  std::unique_ptr<Policy> policy;
  try {
    policy = make_policy(spec, std::move(context));
  } catch (const std::exception& e) {
    throw TrialError(spec.name, trial, 0, e.what());
  }

  TrialRecord record;
  record.algorithm = spec.name;
  record.trial = trial;
  record.increment.assign(T, 0.0);
  record.cumulative.assign(T, 0.0);
  record.per_user_cumulative.assign(N, Vec(T, 0.0));
  record.actions.assign(T * N, -1);
  const bool tracks_preference = policy->preference_estimate(0).has_value();
  if (tracks_preference) record.preference_error.assign(N, Vec(T, 0.0));

  Vec user_total(N, 0.0);
  double total = 0.0;
  int t = 1;
  try {
    for (; t <= dims.horizon; ++t) {
      const auto row = static_cast<std::size_t>(t - 1);
      const auto availability = draw_availability(dims, cfg.protocol, protocol_stream);
      double round_regret = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        const auto& available = availability.arms[n];
        const int user = static_cast<int>(n);
        const int arm = policy->select(user, available, t);
        if (std::find(available.begin(), available.end(), arm) == available.end()) {
          throw std::logic_error("policy selected unavailable arm " + std::to_string(arm));
        }

        const auto& user_model = cfg.users[n];
        Vec preference = draw_preference(user_model, preference_stream);
        // One draw per available arm keeps the reward stream aligned across
        // policies that make different choices.
        Vec reward;
        for (int candidate : available) {
          Vec r = draw_reward(cfg.arms[static_cast<std::size_t>(candidate)], reward_stream);
          if (candidate == arm) reward = std::move(r);
        }

        RoundObservation obs;
        obs.user = user;
        obs.arm = arm;
        obs.overall = overall_reward(preference, reward);
        obs.reward = std::move(reward);
        if (policy->regime() == FeedbackRegime::revealed) obs.preference = std::move(preference);
        policy->observe(obs);

        const double inc = regret_increment(user_model.mean, cfg.arms, available, arm);
        round_regret += inc;
        user_total[n] += inc;
        record.per_user_cumulative[n][row] = user_total[n];
        record.actions[row * N + n] = arm;
      }
      policy->end_round(t);

      total += round_regret;
      record.increment[row] = round_regret;
      record.cumulative[row] = total;
      if (tracks_preference) {
        for (std::size_t n = 0; n < N; ++n) {
          Vec diff = *policy->preference_estimate(static_cast<int>(n));
          for (std::size_t d = 0; d < diff.size(); ++d) diff[d] -= cfg.users[n].mean[d];
          record.preference_error[n][row] = norm2(diff);
        }
      }
    }
  } catch (const TrialError&) {
    throw;
  } catch (const std::exception& e) {
    throw TrialError(spec.name, trial, t, e.what());
  }
  record.skipped_updates = policy->skipped_updates();
  return record;
}

Vec replay_regret(const RunConfig& cfg, const TrialRecord& record) {
  const auto& dims = cfg.dims;
  const auto N = static_cast<std::size_t>(dims.num_users);
  RandomStream protocol_stream =
      derive_rng_stream(cfg.base_seed, static_cast<std::uint64_t>(record.trial), StreamRole::protocol);
  Vec increments(static_cast<std::size_t>(dims.horizon), 0.0);
  for (std::size_t row = 0; row < increments.size(); ++row) {
    const auto availability = draw_availability(dims, cfg.protocol, protocol_stream);
    double round_regret = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      round_regret += regret_increment(cfg.users[n].mean, cfg.arms, availability.arms[n],
                                       record.actions[row * N + n]);
    }
    increments[row] = round_regret;
  }
  return increments;
}

std::vector<TrialRecord> ExperimentResult::all_records() const {
  std::vector<TrialRecord> out;
  for (const auto& per_algorithm : records) out.insert(out.end(), per_algorithm.begin(), per_algorithm.end());
  return out;
}

ExperimentResult run_experiment(const RunConfig& cfg, const ExecutionOptions& options) {
  validate_config(cfg);
  const std::size_t A = cfg.algorithms.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t jobs = A * trials;

  struct Slot {
    std::optional<TrialRecord> record;
    std::string error;
    double seconds = 0.0;
  };
  std::vector<Slot> slots(jobs);

  auto run_job = [&](std::size_t job) {
    const std::size_t a = job / trials;
    const int trial = static_cast<int>(job % trials);
    const auto start = std::chrono::steady_clock::now();
    try {
      slots[job].record = run_trial(cfg, cfg.algorithms[a], trial);
    } catch (const std::exception& e) {
      slots[job].error = e.what();
    }
    slots[job].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (options.threads == 1) {
    for (std::size_t job = 0; job < jobs; ++job) run_job(job);
  } else {
#ifdef _OPENMP
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t job = 0; job < jobs; ++job) run_job(job);
#else
    for (std::size_t job = 0; job < jobs; ++job) run_job(job);
#endif
  }

  ExperimentResult result;
  result.config_digest = config_digest(cfg);
  result.records.resize(A);
  result.wall_seconds.assign(A, 0.0);
  for (std::size_t a = 0; a < A; ++a) {
    result.algorithms.push_back(cfg.algorithms[a].name);
    for (std::size_t k = 0; k < trials; ++k) {
      auto& slot = slots[a * trials + k];
      result.wall_seconds[a] += slot.seconds;
      if (slot.record) {
        result.records[a].push_back(std::move(*slot.record));
      } else {
        result.failures.push_back({cfg.algorithms[a].name, static_cast<int>(k), slot.error});
      }
    }
  }
  return result;
}

std::string results_csv(const ExperimentResult& result) {
  std::string out = "algorithm,trial,t,increment,cumulative\n";
  for (const auto& per_algorithm : result.records) {
    for (const auto& r : per_algorithm) {
      for (std::size_t i = 0; i < r.cumulative.size(); ++i) {
        out += r.algorithm;
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(r.increment[i]);
        out += ',';
        out += format_double(r.cumulative[i]);
        out += '\n';
      }
    }
  }
  return out;
}

std::vector<ManifestEntry> persist(const ExperimentResult& result, const RunConfig& cfg,
                                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("persist: cannot create '" + out_dir.string() + "': " + ec.message());

  nlohmann::json summary;
  summary["schema_version"] = result.schema_version;
  summary["config_digest"] = result.config_digest;
  summary["algorithms"] = nlohmann::json::array();
  const auto summaries = aggregate(result.all_records());
  for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
    nlohmann::json entry{{"name", result.algorithms[a]},
                         {"wall_seconds", a < result.wall_seconds.size() ? result.wall_seconds[a] : 0.0}};
    const auto it = std::find_if(summaries.begin(), summaries.end(),
                                 [&](const auto& s) { return s.algorithm == result.algorithms[a]; });
    if (it != summaries.end()) {
      entry["trials"] = it->trials;
      entry["final_mean"] = it->final_mean;
      entry["final_std"] = it->final_std;
      entry["final_min"] = it->final_min;
      entry["final_max"] = it->final_max;
    } else {
      entry["trials"] = 0;
    }
    summary["algorithms"].push_back(std::move(entry));
  }
  summary["failures"] = nlohmann::json::array();
  for (const auto& f : result.failures) {
    summary["failures"].push_back({{"algorithm", f.algorithm}, {"trial", f.trial}, {"message", f.message}});
  }

  const std::vector<std::pair<std::string, std::string>> files{
      {"results.csv", results_csv(result)},
      {"summary.json", summary.dump(2) + "\n"},
      {"config.echo.json", serialize_config(cfg)},
  };
  std::vector<ManifestEntry> manifest;
  for (const auto& [name, content] : files) {
    const auto path = out_dir / name;
    write_file(path, content);
    manifest.push_back({path, static_cast<std::uintmax_t>(content.size())});
  }
  return manifest;
}

}  // namespace pamab
