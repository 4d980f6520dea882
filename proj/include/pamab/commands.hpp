#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pamab/metrics.hpp"

namespace pamab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitRuntime = 2;

struct CliOptions {
  std::filesystem::path config;
  std::filesystem::path out = "out";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  int seeds = 50;
  int parallel = 1;
  std::filesystem::path results;  // plot input
};

int cmd_run(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_prop1(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_wls_demo(const CliOptions& opts, std::ostream& out, std::ostream& err);
// Reads opts.results and writes the SVG to opts.out.
int cmd_plot(const CliOptions& opts, std::ostream& out, std::ostream& err);

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses a results.csv body into per-trial cumulative curves (increment and
// cumulative columns only). Throws CsvError naming the first bad line.
std::vector<TrialRecord> read_results_csv(std::istream& in);

}  // namespace pamab
