#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "pamab/rng.hpp"

using namespace pamab;

namespace {

std::vector<std::uint64_t> first_draws(RandomStream s, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(s.next_u64());
  return out;
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("same key reproduces the stream") {
    CHECK(first_draws(derive_rng_stream(7, 0, StreamRole::reward), 100) ==
          first_draws(derive_rng_stream(7, 0, StreamRole::reward), 100));
  }

  TEST_CASE("trials and roles get distinct streams") {
    const auto base = first_draws(derive_rng_stream(7, 0, StreamRole::reward), 100);
    CHECK(base != first_draws(derive_rng_stream(7, 1, StreamRole::reward), 100));
    CHECK(base != first_draws(derive_rng_stream(7, 0, StreamRole::preference), 100));
    CHECK(base != first_draws(derive_rng_stream(8, 0, StreamRole::reward), 100));

    std::set<std::uint64_t> heads;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      for (auto role : {StreamRole::reward, StreamRole::preference, StreamRole::policy,
                        StreamRole::protocol}) {
        heads.insert(derive_rng_stream(3, trial, role).next_u64());
      }
    }
    CHECK(heads.size() == 200);
  }

  TEST_CASE("stream creation order is irrelevant") {
    auto a1 = derive_rng_stream(1, 2, StreamRole::policy);
    auto b1 = derive_rng_stream(1, 3, StreamRole::policy);
    auto b2 = derive_rng_stream(1, 3, StreamRole::policy);
    auto a2 = derive_rng_stream(1, 2, StreamRole::policy);
    CHECK(a1.next_u64() == a2.next_u64());
    CHECK(b1.next_u64() == b2.next_u64());
  }

  TEST_CASE("uniform moments and range") {
    auto s = derive_rng_stream(11, 0, StreamRole::policy);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = s.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
      sq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12).epsilon(0.02));
  }

  TEST_CASE("uniform_index is uniform and rejects an empty range") {
    auto s = derive_rng_stream(12, 0, StreamRole::policy);
    std::vector<int> hist(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) ++hist[s.uniform_index(7)];
    for (int h : hist) CHECK(std::abs(h / double(n) - 1.0 / 7) < 0.01);
    CHECK_THROWS_AS(s.uniform_index(0), std::invalid_argument);
  }

  TEST_CASE("gaussian moments") {
    auto s = derive_rng_stream(13, 0, StreamRole::reward);
    const int n = 200000;
    double sum = 0.0, sq = 0.0, tail = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = s.gaussian();
      REQUIRE(std::isfinite(z));
      sum += z;
      sq += z * z;
      tail += z > 1.96;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(tail / n == doctest::Approx(0.025).epsilon(0.1));
  }
}
