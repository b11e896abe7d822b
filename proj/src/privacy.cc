//
// Copyright 2026 The fedmab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedmab/privacy.h"

#include <cmath>
#include <stdexcept>

namespace fedmab {

void PrivacyParams::Validate() const {
  if (enabled && !(epsilon > 0.0 && std::isfinite(epsilon))) {
    throw std::invalid_argument("privacy: epsilon must be positive");
  }
}

double LaplaceSample(double scale, RandomStream& rng) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("laplace: scale must be positive");
  }
  const double u = rng.OpenUniform() - 0.5;
  // u is never exactly -0.5, so the log argument stays positive.
  return u < 0.0 ? scale * std::log1p(2.0 * u)
                 : -scale * std::log1p(-2.0 * u);
}

double EpochNoiseScale(int participants, double epsilon,
                       int64_t new_samples) {
  return 1.0 / (static_cast<double>(participants) * epsilon *
                static_cast<double>(new_samples));
}

double PrivatizeEpochMean(double x_hat, int participants,
                          const PrivacyParams& privacy, int64_t new_samples,
                          RandomStream& rng) {
  if (new_samples < 1) {
    throw std::invalid_argument("privatize: epoch has no new samples");
  }
  if (participants < 1) {
    throw std::invalid_argument("privatize: need at least one participant");
  }
  if (!privacy.enabled) return x_hat;
  return x_hat + LaplaceSample(
                     EpochNoiseScale(participants, privacy.epsilon, new_samples),
                     rng);
}

HistoricalPrivateMean UpdateHistoricalMean(const HistoricalPrivateMean& prev,
                                           int64_t new_cumulative,
                                           double epoch_private_mean) {
  if (new_cumulative <= prev.cumulative_samples) {
    throw std::invalid_argument(
        "historical mean: cumulative samples must increase");
  }
  if (prev.cumulative_samples == 0) {
    return {epoch_private_mean, new_cumulative};
  }
  const double total = static_cast<double>(new_cumulative);
  const double old_weight = static_cast<double>(prev.cumulative_samples) / total;
  const double new_weight =
      static_cast<double>(new_cumulative - prev.cumulative_samples) / total;
  return {old_weight * prev.value + new_weight * epoch_private_mean,
          new_cumulative};
}

}  // namespace fedmab
