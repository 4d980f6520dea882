#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pamab/config.hpp"
#include "pamab/env.hpp"
#include "pamab/harness.hpp"
#include "pamab/registry.hpp"

using namespace pamab;

namespace {

RunConfig small_random(int T = 200, int trials = 3, std::uint64_t seed = 5) {
  RandomizedEnvironmentOptions o;
  o.dims.horizon = T;
  o.trials = trials;
  o.seed = seed;
  return randomized_environment(o);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("pamab_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("single round, single arm") {
    RunConfig cfg;
    cfg.dims = {1, 2, 1, 1};
    cfg.arms = {{{0.3, 0.6}, {0.01, 0.01}}};
    cfg.users = {{{1.0, 1.0}, {0.1, 0.1}, false}};
    for (const auto& info : kAlgorithms) cfg.algorithms.push_back(default_algorithm(info.name, 2));
    REQUIRE(check_config(cfg).ok());
    for (const auto& spec : cfg.algorithms) {
      const auto r = run_trial(cfg, spec, 0);
      CHECK(r.actions == std::vector<int>{0});
      CHECK(r.cumulative == Vec{0.0});
    }
  }

  TEST_CASE("trials are reproducible") {
    const RunConfig cfg = small_random();
    for (const auto& spec : cfg.algorithms) {
      CHECK(run_trial(cfg, spec, 1) == run_trial(cfg, spec, 1));
    }
    CHECK(run_trial(cfg, cfg.algorithms[3], 0).actions != run_trial(cfg, cfg.algorithms[3], 1).actions);
  }

  TEST_CASE("records are consistent") {
    const RunConfig cfg = small_random();
    for (const auto& spec : cfg.algorithms) {
      const auto r = run_trial(cfg, spec, 0);
      REQUIRE(r.cumulative.size() == 200);
      REQUIRE(r.actions.size() == 200 * 3);
      double run = 0.0;
      for (std::size_t t = 0; t < r.increment.size(); ++t) {
        CHECK(r.increment[t] >= 0.0);
        run += r.increment[t];
        CHECK(r.cumulative[t] == doctest::Approx(run));
        double users = 0.0;
        for (const auto& u : r.per_user_cumulative) users += u[t];
        CHECK(users == doctest::Approx(r.cumulative[t]));
      }
      const Vec replay = replay_regret(cfg, r);
      CHECK(replay == r.increment);
      const bool estimates = spec.name.rfind("prucb", 0) == 0 || spec.name == "oful-eps";
      CHECK(r.preference_error.empty() == !estimates);
    }
  }

  TEST_CASE("block protocol keeps users inside their block") {
    const RunConfig cfg = small_random(100, 1);
    const auto r = run_trial(cfg, cfg.algorithms[0], 0);
    auto s = derive_rng_stream(cfg.base_seed, 0, StreamRole::protocol);
    for (int t = 0; t < 100; ++t) {
      const auto a = draw_availability(cfg.dims, cfg.protocol, s);
      for (int n = 0; n < 3; ++n) {
        const int arm = r.actions[t * 3 + n];
        CHECK(arm / 5 == a.arms[n][0] / 5);
      }
    }
  }

  TEST_CASE("baselines that see only reward vectors ignore preferences") {
    RunConfig a = small_random(300, 1);
    RunConfig b = a;
    for (auto& u : b.users) {
      for (auto& m : u.mean) m = 4.0 - m * 0.5;
    }
    for (const char* name : {"pareto-ucb", "pareto-ts", "s-ucb", "s-moss"}) {
      const auto spec = default_algorithm(name, 4);
      CHECK(run_trial(a, spec, 0).actions == run_trial(b, spec, 0).actions);
    }
  }

  TEST_CASE("pareto-ucb suffers linear regret on the two-arm instance") {
    const RunConfig cfg = prop1_environment(5000, 10, 0);
    double total = 0.0;
    for (int k = 0; k < 10; ++k) total += run_trial(cfg, default_algorithm("pareto-ucb", 2), k).cumulative.back();
    CHECK(total / 10 >= 0.4 * 5000);
  }

  TEST_CASE("two-arm instance curves") {
    const RunConfig cfg = prop1_environment(5000, 10, 0);
    ExperimentResult res = run_experiment(cfg);
    for (const auto& s : aggregate(res.all_records())) {
      if (s.algorithm == "pareto-ucb") {
        CHECK((s.mean_curve[4999] - s.mean_curve[2499]) / 2500 >= 0.2);
      }
      if (s.algorithm == "prucb-kp") CHECK(s.final_mean <= 50);
    }
  }

  TEST_CASE("experiment cardinality and serial/parallel equality") {
    RunConfig cfg = small_random(150, 10);
    cfg.algorithms = {default_algorithm("prucb-hp", 4), default_algorithm("pareto-ts", 4)};
    const auto serial = run_experiment(cfg, {1});
    CHECK(serial.all_records().size() == 20);
    CHECK(serial.failures.empty());
    const auto parallel = run_experiment(cfg, {4});
    CHECK(parallel.records == serial.records);
    CHECK(parallel.config_digest == serial.config_digest);
    CHECK(results_csv(parallel) == results_csv(serial));
  }

  TEST_CASE("invalid configs are refused") {
    RunConfig cfg = small_random();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  }

  TEST_CASE("persist writes a stable manifest") {
    RunConfig cfg = small_random(50, 2);
    cfg.algorithms = {default_algorithm("prucb-up", 4), default_algorithm("moss", 4)};
    const auto res = run_experiment(cfg);
    const auto dir = scratch("persist");
    const auto m1 = persist(res, cfg, dir);
    REQUIRE(m1.size() == 3);
    const std::string csv = slurp(dir / "results.csv");
    const std::string summary = slurp(dir / "summary.json");
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + 2 * 2 * 50);
    CHECK(csv == results_csv(res));
    CHECK(parse_config(slurp(dir / "config.echo.json")) == cfg);
    const auto j = nlohmann::json::parse(summary);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["config_digest"] == config_digest(cfg));
    CHECK(j["algorithms"].size() == 2);

    persist(res, cfg, dir);
    CHECK(slurp(dir / "results.csv") == csv);
    CHECK(slurp(dir / "summary.json") == summary);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("empty result persists headers only") {
    const RunConfig cfg = small_random(10, 1);
    ExperimentResult empty;
    const auto dir = scratch("empty");
    persist(empty, cfg, dir);
    CHECK(slurp(dir / "results.csv") == "algorithm,trial,t,increment,cumulative\n");
    CHECK(nlohmann::json::parse(slurp(dir / "summary.json"))["algorithms"].empty());
    std::filesystem::remove_all(dir);
  }
}
