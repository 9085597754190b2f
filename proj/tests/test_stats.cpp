// Copyright 2026 The qite-rbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <catch_amalgamated.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "qite/stats.hpp"

using namespace qite;

namespace {

double sample_sd(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / (x.size() - 1));
}

}  // namespace

TEST_CASE("jackknife of a mean equals the standard error") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(2.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    BatchSeries s;
    const std::size_t n = 2 + trial * 5;
    for (std::size_t k = 0; k < n; ++k) s.estimates.push_back(g(rng));
    const Estimate e = jackknife(s);
    CHECK(e.mean == Catch::Approx(std::accumulate(s.estimates.begin(), s.estimates.end(), 0.0) / n));
    CHECK(e.std_error == Catch::Approx(sample_sd(s.estimates) / std::sqrt(double(n))).epsilon(1e-12));
    CHECK(e.method == ErrorMethod::Jackknife);
  }
  CHECK_THROWS_AS(jackknife(BatchSeries{{1.0}, 0, {}}), std::invalid_argument);
}

TEST_CASE("bootstrap is seeded and consistent") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  BatchSeries s;
  for (int k = 0; k < 100; ++k) s.estimates.push_back(g(rng));
  const Estimate a = bootstrap(s, 2000, 42), b = bootstrap(s, 2000, 42);
  CHECK(a.std_error == b.std_error);
  CHECK(a.method == ErrorMethod::Bootstrap);
  CHECK(std::abs(a.std_error / jackknife(s).std_error - 1.0) < 0.1);
  const Estimate one = bootstrap(s, 1, 42);
  CHECK(one.std_error == 0.0);
  CHECK_FALSE(one.warnings.empty());
  CHECK_THROWS_AS(bootstrap(s, 0, 1), std::invalid_argument);
}

TEST_CASE("ratio estimator drops empty batches") {
  const RatioResult r = ratio_estimator({3.0, 0.0, -2.0}, {6, 0, 4}, 10);
  REQUIRE(r.series.estimates.size() == 2);
  CHECK(r.series.estimates[0] == 0.5);
  CHECK(r.series.estimates[1] == -0.5);
  CHECK(r.dropped == 1);
  CHECK(r.warnings.size() == 1);
  CHECK(r.series.batch_size == 10);
  CHECK_THROWS_AS(ratio_estimator({0.0, 0.0}, {0, 0}), std::runtime_error);
  CHECK_THROWS_AS(ratio_estimator({0.0}, {1, 2}), std::invalid_argument);
}
