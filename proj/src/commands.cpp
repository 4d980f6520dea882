#include "pamab/commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pamab/config.hpp"
#include "pamab/env.hpp"
#include "pamab/harness.hpp"
#include "pamab/svg.hpp"
#include "pamab/wls_demo.hpp"

namespace pamab {

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("results.csv line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

void print_final_table(const std::vector<AlgorithmSummary>& summaries, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %7s %14s %12s\n", "algorithm", "trials", "final_regret", "std");
  out << buf;
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof buf, "%-12s %7d %14.3f %12.3f\n", s.algorithm.c_str(), s.trials,
                  s.final_mean, s.final_std);
    out << buf;
  }
}

// Runs a validated config, persists it with a regret chart and prints the
// final-regret table.
int execute(const RunConfig& cfg, const CliOptions& opts, const std::string& title,
            std::ostream& out, std::ostream& err) {
  ExperimentResult result;
  try {
    result = run_experiment(cfg, {opts.parallel});
    const auto manifest = persist(result, cfg, opts.out);
    const auto summaries = aggregate(result.all_records());
    write_text(opts.out / "regret.svg", render_regret_chart(summaries, title));
    print_final_table(summaries, out);
    for (const auto& entry : manifest) out << "wrote " << entry.path.string() << " (" << entry.bytes << " bytes)\n";
    out << "wrote " << (opts.out / "regret.svg").string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  for (const auto& f : result.failures) err << "trial failed: " << f.message << "\n";
  return result.failures.empty() ? kExitOk : kExitRuntime;
}

std::optional<RunConfig> load_for_run(const CliOptions& opts, std::ostream& err) {
  if (opts.config.empty()) {
    err << "error: --config PATH is required\n";
    return std::nullopt;
  }
  if (!std::filesystem::exists(opts.config)) {
    err << "error: config file not found: " << opts.config.string() << "\n";
    return std::nullopt;
  }
  try {
    RunConfig cfg = apply_overrides(load_config(opts.config), opts.overrides);
    if (opts.seed) cfg.base_seed = *opts.seed;
    validate_config(cfg);
    return cfg;
  } catch (const ConfigError& e) {
    err << "error: " << opts.config.string() << ": invalid config\n";
    for (const auto& p : e.problems()) err << "  " << p << "\n";
  }
  return std::nullopt;
}

}  // namespace

int cmd_run(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  const auto cfg = load_for_run(opts, err);
  if (!cfg) return kExitInvalid;
  return execute(*cfg, opts, "Cumulative regret", out, err);
}

int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  const auto cfg = load_for_run(opts, err);
  if (!cfg) return kExitInvalid;
  out << "config OK (digest " << config_digest(*cfg) << ")\n";
  return kExitOk;
}

int cmd_prop1(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg = prop1_environment(5000, 10, opts.seed.value_or(0));
  try {
    cfg = apply_overrides(cfg, opts.overrides);
    validate_config(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return execute(cfg, opts, "Two-arm conflicting-preference instance", out, err);
}

int cmd_wls_demo(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  WlsDemoOptions demo;
  demo.seeds = opts.seeds;
  if (opts.seed) demo.base_seed = *opts.seed;
  if (demo.seeds < 1) {
    err << "error: --seeds must be >= 1\n";
    return kExitInvalid;
  }
  try {
    const auto result = run_wls_demo(demo);
    write_text(opts.out / "wls_demo.csv", wls_demo_csv(result, demo.single_arm_samples));

    std::vector<BarGroup> groups;
    for (int n : demo.sample_counts) {
      groups.push_back({std::to_string(n) + " samples",
                        {result.cell("wls", n).mean_error, result.cell("ols", n).mean_error}});
    }
    write_text(opts.out / "wls_demo.svg",
               render_bar_chart(groups, {"WLS", "least squares"},
                                {"Preference estimation error", "samples (half per arm)",
                                 "mean l2 error"}));

    char buf[128];
    std::snprintf(buf, sizeof buf, "%8s %12s %12s\n", "samples", "wls", "ols");
    out << buf;
    for (int n : demo.sample_counts) {
      std::snprintf(buf, sizeof buf, "%8d %12.5f %12.5f\n", n, result.cell("wls", n).mean_error,
                    result.cell("ols", n).mean_error);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "single-arm ols (%d samples): dominated %.5f, optimal %.5f\n",
                  demo.single_arm_samples, result.ols_dominated_only, result.ols_optimal_only);
    out << buf;
    out << "wrote " << (opts.out / "wls_demo.csv").string() << "\n";
    out << "wrote " << (opts.out / "wls_demo.svg").string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

std::vector<TrialRecord> read_results_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw CsvError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "algorithm,trial,t,increment,cumulative") throw CsvError(1, "unexpected header '" + line + "'");

  std::vector<TrialRecord> records;
  std::map<std::pair<std::string, int>, std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5 || fields[0].empty()) throw CsvError(line_no, "expected 5 fields");

    auto parse_int = [&](const std::string& s) {
      long long v = 0;
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) throw CsvError(line_no, "bad integer '" + s + "'");
      return v;
    };
    auto parse_real = [&](const std::string& s) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &pos);
      } catch (const std::exception&) {
        throw CsvError(line_no, "bad number '" + s + "'");
      }
      if (pos != s.size()) throw CsvError(line_no, "bad number '" + s + "'");
      return v;
    };
    const int trial = static_cast<int>(parse_int(fields[1]));
    const long long t = parse_int(fields[2]);
    const double inc = parse_real(fields[3]);
    const double cum = parse_real(fields[4]);

    const auto key = std::make_pair(fields[0], trial);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, records.size()).first;
      TrialRecord r;
      r.algorithm = fields[0];
      r.trial = trial;
      records.push_back(std::move(r));
    }
    auto& rec = records[it->second];
    if (t != static_cast<long long>(rec.cumulative.size()) + 1) {
      throw CsvError(line_no, "round " + std::to_string(t) + " out of sequence");
    }
    rec.increment.push_back(inc);
    rec.cumulative.push_back(cum);
  }
  return records;
}

int cmd_plot(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  std::ifstream in(opts.results);
  if (!in) {
    err << "error: cannot open results file: " << opts.results.string() << "\n";
    return kExitInvalid;
  }
  std::vector<AlgorithmSummary> summaries;
  try {
    summaries = aggregate(read_results_csv(in));
  } catch (const CsvError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  try {
    write_text(opts.out, render_regret_chart(summaries));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  out << "wrote " << opts.out.string() << "\n";
  return kExitOk;
}

}  // namespace pamab
