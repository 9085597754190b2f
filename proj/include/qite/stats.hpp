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


#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qite {

struct BatchSeries {
  std::vector<double> estimates;        // one per batch
  std::size_t batch_size = 0;           // shots per batch
  std::vector<std::size_t> accepted;    // accepted shots per batch (optional)
};

enum class ErrorMethod { Jackknife, Bootstrap };

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  ErrorMethod method = ErrorMethod::Jackknife;
  std::vector<std::string> warnings;
};

/// Leave-one-out error sqrt[(n-1)/n sum_i (mean_(i) - mean)^2]; n >= 2.
Estimate jackknife(const BatchSeries& series);

/// Standard deviation of `n_resamples` resampled batch means (mt19937_64
/// seeded with `seed`); n >= 2.
Estimate bootstrap(const BatchSeries& series, std::size_t n_resamples,
                   std::uint64_t seed);

struct RatioResult {
  BatchSeries series;  // non-empty batches only
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
};

/**
 * Per-batch observable means over accepted shots: sums[i] / accepted[i].
 * Empty batches are excluded with a warning; throws std::runtime_error when
 * every batch is empty.
 */
RatioResult ratio_estimator(const std::vector<double>& accepted_sums,
                            const std::vector<std::size_t>& accepted_counts,
                            std::size_t batch_size = 0);

}  // namespace qite
