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


#include "qite/stats.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qite {

namespace {

void require_batches(const BatchSeries& s) {
  if (s.estimates.size() < 2)
    throw std::invalid_argument(fmt::format(
        "error estimation needs at least 2 batches, got {}",
        s.estimates.size()));
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

}  // namespace

Estimate jackknife(const BatchSeries& series) {
  require_batches(series);
  const auto& x = series.estimates;
  const double n = double(x.size());
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  Estimate e;
  e.method = ErrorMethod::Jackknife;
  e.mean = sum / n;
  double ss = 0.0;
  for (double xi : x) {
    const double loo = (sum - xi) / (n - 1);
    ss += (loo - e.mean) * (loo - e.mean);
  }
  e.std_error = std::sqrt((n - 1) / n * ss);
  return e;
}

Estimate bootstrap(const BatchSeries& series, std::size_t n_resamples,
                   std::uint64_t seed) {
  require_batches(series);
  if (n_resamples == 0) throw std::invalid_argument("zero bootstrap resamples");
  const auto& x = series.estimates;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::vector<double> means(n_resamples);
  for (auto& m : means) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[pick(rng)];
    m = s / double(x.size());
  }
  Estimate e;
  e.method = ErrorMethod::Bootstrap;
  e.mean = mean_of(x);
  const double mm = mean_of(means);
  double ss = 0.0;
  for (double m : means) ss += (m - mm) * (m - mm);
  e.std_error = std::sqrt(ss / double(n_resamples));
  if (n_resamples == 1)
    e.warnings.push_back("single bootstrap resample: error is degenerate (0)");
  return e;
}

RatioResult ratio_estimator(const std::vector<double>& accepted_sums,
                            const std::vector<std::size_t>& accepted_counts,
                            std::size_t batch_size) {
  if (accepted_sums.size() != accepted_counts.size())
    throw std::invalid_argument("sums and counts differ in length");
  RatioResult r;
  r.series.batch_size = batch_size;
  for (std::size_t i = 0; i < accepted_sums.size(); ++i) {
    if (accepted_counts[i] == 0) {
      ++r.dropped;
      continue;
    }
    r.series.estimates.push_back(accepted_sums[i] /
                                 double(accepted_counts[i]));
    r.series.accepted.push_back(accepted_counts[i]);
  }
  if (r.series.estimates.empty())
    throw std::runtime_error("no accepted samples in any batch");
  if (r.dropped)
    r.warnings.push_back(fmt::format(
        "{} of {} batches had no accepted shots and were dropped", r.dropped,
        accepted_sums.size()));
  return r;
}

}  // namespace qite
